#pragma once

namespace expertkm {

// Non-normalized upper incomplete gamma: integral of t^(s-1) e^(-t) over
// [x, infinity). Series expansion below x = s+1, Lentz continued fraction
// above; relative error <= 1e-10 on s in (0, 170], x >= 0.
double upper_incomplete_gamma(double s, double x);

double normal_pdf(double z);
double normal_cdf(double z);

// Upper tail 1 - Phi(z), computed via erfc so far tails keep full precision.
double normal_sf(double z);

}  // namespace expertkm
