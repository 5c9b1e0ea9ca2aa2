#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expertkm/kernels.hpp"
#include "expertkm/sample.hpp"

namespace expertkm {

// 17 significant digits; infinities as "inf"/"-inf" so round-trips are
// bit-faithful.
std::string format_real(double v);

// Observation files: header id,w,delta,eta,x_true,y_true,c_true with empty
// fields for absent optionals. Readers accept any column order but require
// id, w and delta; unknown header names are rejected.
void write_observations_csv(const std::string& path, const std::vector<Observation>& obs);
std::vector<Observation> read_observations_csv(const std::string& path);

// Kernel files: header id,kind,p1,p2; the kernel's lower endpoint is the W of
// the observation with the matching id. Returned beliefs align with obs.
void write_kernels_csv(const std::string& path, const std::vector<Observation>& obs,
                       const std::vector<std::optional<BeliefKernel>>& beliefs);
std::vector<std::optional<BeliefKernel>> read_kernels_csv(const std::string& path,
                                                          const std::vector<Observation>& obs);

void write_curve_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& estimate);

}  // namespace expertkm
