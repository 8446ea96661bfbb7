#include "skm/observation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skm {

double obs_logdensity(const ObservationModel& model, const IVec& y, const Vec& x) {
  if (y.size() != x.size())
    throw std::invalid_argument("obs_logdensity: dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const int yi = y[i];
    if (yi < 0) throw std::invalid_argument("obs_logdensity: y must be nonnegative");
    const double xi = x[i];
    if (xi > 0.0) {
      sum += -xi + yi * std::log(xi) - std::lgamma(yi + 1.0);
    } else if (yi == 0) {
      sum += std::log1p(-model.bern_p);
    } else if (yi == 1) {
      sum += std::log(model.bern_p);
    } else {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return sum;
}

IVec draw_observation(const ObservationModel& model, const Vec& x, RngStream& rng) {
  IVec y(x.size());
  for (int i = 0; i < x.size(); ++i)
    y[i] = x[i] > 0.0 ? static_cast<int>(draw_poisson(rng, x[i]))
                      : draw_bernoulli(rng, model.bern_p);
  return y;
}

void Dataset::validate(int k) const {
  if (times.empty()) throw std::invalid_argument("dataset: empty");
  if (times.front() != 0.0) throw std::invalid_argument("dataset: first time must be 0");
  if (times.size() != y.size())
    throw std::invalid_argument("dataset: times/observations length mismatch");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("dataset: times must be strictly increasing");
  for (const auto& yi : y) {
    if (yi.size() != k) throw std::invalid_argument("dataset: observation dimension");
    if (yi.minCoeff() < 0) throw std::invalid_argument("dataset: negative observation");
  }
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const int k = data.y.empty() ? 0 : static_cast<int>(data.y.front().size());
  out << "t";
  for (int i = 1; i <= k; ++i) out << ",y_" << i;
  out << "\n";
  char buf[64];
  for (size_t j = 0; j < data.times.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", data.times[j]);
    out << buf;
    for (int i = 0; i < k; ++i) out << "," << data.y[j][i];
    out << "\n";
  }
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Dataset data;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset csv: empty file");
  int k = 0;
  for (char ch : line)
    if (ch == ',') ++k;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    data.times.push_back(std::stod(cell));
    IVec yi(k);
    for (int i = 0; i < k; ++i) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error("dataset csv: short row");
      yi[i] = std::stoi(cell);
    }
    data.y.push_back(yi);
  }
  data.validate(k);
  return data;
}

}  // namespace skm
