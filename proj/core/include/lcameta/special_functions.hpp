#pragma once

// Regularized incomplete beta/gamma functions and the distribution tails the
// regression diagnostics need. Arguments outside the documented domains throw
// NumericError.

namespace lcameta::special {

/// I_x(a, b) for a, b > 0 and x in [0, 1]. Continued fraction (modified Lentz)
/// on whichever side of the mean converges fastest.
double regularized_beta(double a, double b, double x);

/// P(a, x) and Q(a, x) = 1 - P(a, x) for a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Two-sided tail P(|T| >= |t|) of Student's t with `df` > 0 degrees of freedom.
double student_t_two_sided(double t, double df);

/// Upper tail P(F >= f) of the F(df1, df2) distribution.
double f_upper_tail(double f, double df1, double df2);

/// Upper tail P(X >= x) of chi-square with `df` degrees of freedom; closed form
/// exp(-x/2) for df = 2.
double chi_square_upper_tail(double x, double df);

}  // namespace lcameta::special
