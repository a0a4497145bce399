#pragma once

namespace polytree {

// I_x(a, b), the regularized incomplete beta function.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_pdf(double t, double df);
double student_t_cdf(double t, double df);

/// Inverse CDF, by safeguarded Newton iteration on the upper tail
/// (absolute tolerance 1e-12 in t).
double student_t_quantile(double prob, double df);

}  // namespace polytree
