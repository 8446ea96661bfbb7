#pragma once

#include "skm/rng.hpp"
#include "skm/types.hpp"

#include <string>
#include <vector>

namespace skm {

// Per-species observation noise, components independent:
// Y_i | X_i ~ Poisson(X_i) when X_i > 0, Bernoulli(bern_p) when X_i = 0.
// The Poisson branch uses the continuous-x pmf extension e^-x x^y / y!.
struct ObservationModel {
  double bern_p = 0.1;
};

double obs_logdensity(const ObservationModel& model, const IVec& y, const Vec& x);
IVec draw_observation(const ObservationModel& model, const Vec& x, RngStream& rng);

struct Dataset {
  std::vector<double> times;  // strictly increasing, first at t = 0
  std::vector<IVec> y;        // nonnegative integer vectors

  int num_obs() const { return static_cast<int>(times.size()); }
  void validate(int k) const;
};

void write_dataset_csv(const Dataset& data, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

}  // namespace skm
