#pragma once

// Gauss-Hermite rule (weight exp(-x^2)). Starting nodes from the Golub-Welsch
// eigenproblem, then Newton-polished at 50 digits with weights from
//   w_i = 2^{N-1} N! sqrt(pi) / (N^2 H_{N-1}(x_i)^2).
// `scaled_weights` holds w_i exp(x_i^2), which double-precision Golub-Welsch
// cannot deliver in the tails.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <vector>

namespace kleinb::oracle {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> scaled_weights;
};

inline Quadrature gauss_hermite(int order) {
  using mp = boost::multiprecision::cpp_dec_float_50;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);

  // physicists' H_N and H_{N-1} by the plain three-term recurrence
  auto hermite_pair = [order](const mp& x, mp& h_n, mp& h_nm1) {
    mp prev = 1, cur = 2 * x;
    for (int k = 1; k < order; ++k) {
      mp next = 2 * x * cur - 2 * k * prev;
      prev = cur;
      cur = next;
    }
    h_n = cur;
    h_nm1 = prev;
  };

  mp norm = sqrt(boost::math::constants::pi<mp>()) * pow(mp(2), order - 1);
  for (int k = 2; k <= order; ++k) norm *= k;
  norm /= mp(order) * order;

  Quadrature q;
  for (int i = 0; i < order; ++i) {
    mp x = solver.eigenvalues()(i);
    mp h_n, h_nm1;
    for (int it = 0; it < 8; ++it) {
      hermite_pair(x, h_n, h_nm1);
      x -= h_n / (2 * order * h_nm1);
    }
    hermite_pair(x, h_n, h_nm1);
    q.nodes.push_back(static_cast<double>(x));
    q.scaled_weights.push_back(static_cast<double>(norm / (h_nm1 * h_nm1) * exp(x * x)));
  }
  return q;
}

}  // namespace kleinb::oracle
