#pragma once

namespace abcmc {

double normal_pdf(double x, double mean = 0.0, double sd = 1.0);
double normal_cdf(double x);
double normal_log_pdf(double x, double mean = 0.0, double sd = 1.0);

}  // namespace abcmc
