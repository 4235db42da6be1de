#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <vector>

namespace statearb {

// Finitely supported probability measure on R^n.
struct DiscreteMeasure {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd weights;  // nonnegative, summing to one

  void validate(double tol = 1e-9) const {
    if (static_cast<int>(points.size()) != weights.size()) {
      throw std::invalid_argument("measure: point/weight count mismatch");
    }
    if (weights.size() == 0) throw std::invalid_argument("measure: empty support");
    if ((weights.array() < -tol).any()) {
      throw std::invalid_argument("measure: negative weight");
    }
    if (std::abs(weights.sum() - 1.0) > tol) {
      throw std::invalid_argument("measure: weights must sum to one");
    }
  }

  double expectation(const std::function<double(const Eigen::VectorXd&)>& f) const {
    double v = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) v += weights[i] * f(points[i]);
    return v;
  }

  Eigen::VectorXd mean() const {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i) m += weights[i] * points[i];
    return m;
  }
};

}  // namespace statearb
