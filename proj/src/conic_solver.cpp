#include "statearb/conic_solver.hpp"

#include <iomanip>

namespace statearb {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalTrouble: return "numerical_trouble";
  }
  return "unknown";
}

void dump_problem(const ConicProblem& problem, std::ostream& os) {
  const auto write_lower = [&os](const Eigen::MatrixXd& m) {
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j <= i; ++j) {
        os << (j ? " " : "") << std::setprecision(17) << m(i, j);
      }
      os << "\n";
    }
  };
  os << "conic-problem vars=" << problem.num_vars()
     << " blocks=" << problem.blocks.size() << "\n";
  os << "objective";
  for (int k = 0; k < problem.num_vars(); ++k) {
    os << " " << std::setprecision(17) << problem.objective[k];
  }
  os << "\n";
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    const auto& block = problem.blocks[b];
    os << "block " << b << " dim=" << block.constant.rows() << "\n";
    os << "F0\n";
    write_lower(block.constant);
    for (std::size_t k = 0; k < block.coeff.size(); ++k) {
      os << "F" << k + 1 << "\n";
      write_lower(block.coeff[k]);
    }
  }
}

}  // namespace statearb
