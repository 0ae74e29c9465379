// Copyright 2026 The Meanforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/operator.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "core/errors.hpp"
#include "core/numerics.hpp"
#include "core/weighted.hpp"

namespace meanforge {

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
  return 0.5 * (x + x.adjoint());
}

double spectral_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  return svd.singularValues()(0);
}

HPDMatrix::HPDMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError("an HPD matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * scale) {
    throw DomainError("matrix is not Hermitian (skew part " + std::to_string(skew) + ")");
  }
  matrix_ = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw NonPositive("Hermitian eigensolver failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  if (!(eigenvalues_.minCoeff() > 0.0)) {
    throw NonPositive("matrix is not positive definite (smallest eigenvalue " +
                      std::to_string(eigenvalues_.minCoeff()) + ")");
  }
  sqrt_ = apply([](double x) { return std::sqrt(x); });
  inv_sqrt_ = apply([](double x) { return 1.0 / std::sqrt(x); });
}

HPDMatrix HPDMatrix::identity(int n) {
  return HPDMatrix(ComplexMatrix::Identity(n, n));
}

HPDMatrix HPDMatrix::diagonal(const RealVector& d) {
  return HPDMatrix(ComplexMatrix(d.cast<std::complex<double>>().asDiagonal()));
}

ComplexMatrix HPDMatrix::apply(const std::function<double(double)>& f) const {
  RealVector values(eigenvalues_.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = f(eigenvalues_(i));
  return hermitian_part(eigenvectors_ * values.asDiagonal() * eigenvectors_.adjoint());
}

HPDMatrix HPDMatrix::inverse() const {
  return HPDMatrix(apply([](double x) { return 1.0 / x; }));
}

RepresentingFunction::RepresentingFunction(std::string name, Fn fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
  const double at_one = fn_(1.0);
  if (!(std::fabs(at_one - 1.0) <= 1e-12)) {
    throw DomainError("representing function '" + name_ + "' has f(1) = " +
                      std::to_string(at_one));
  }
}

RepresentingFunction RepresentingFunction::of(const SymmetricMean& m) {
  return RepresentingFunction(m.name(), [m](double x) { return m(1.0, x); });
}

RepresentingFunction RepresentingFunction::power(double v) {
  return RepresentingFunction("x^" + std::to_string(v),
                              [v](double x) { return std::exp(v * std::log(x)); });
}

RepresentingFunction RepresentingFunction::weighted_log(double v) {
  return RepresentingFunction("Lv", [v](double x) { return kernel::log_v(1.0, x, v); });
}

RepresentingFunction RepresentingFunction::weighted_identric(double v) {
  return RepresentingFunction("Iv", [v](double x) { return kernel::identric_v(1.0, x, v); });
}

namespace {

void require_same_dim(const HPDMatrix& a, const HPDMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("operands have dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
}

void require_weight(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("weight must lie in [0, 1]");
}

HPDMatrix middle_factor(const HPDMatrix& a, const HPDMatrix& b) {
  return HPDMatrix(hermitian_part(a.inv_sqrt() * b.matrix() * a.inv_sqrt()));
}

}  // namespace

HPDMatrix apply_mean(const RepresentingFunction& f, const HPDMatrix& a, const HPDMatrix& b) {
  require_same_dim(a, b);
  const HPDMatrix c = middle_factor(a, b);
  const ComplexMatrix fc = c.apply([&f](double x) { return f(x); });
  return HPDMatrix(hermitian_part(a.sqrt() * fc * a.sqrt()));
}

HPDMatrix op_weighted_standard(MeanKind kind, const HPDMatrix& a, const HPDMatrix& b,
                               double v) {
  require_same_dim(a, b);
  require_weight(v);
  switch (kind) {
    case MeanKind::arith:
      return HPDMatrix((1.0 - v) * a.matrix() + v * b.matrix());
    case MeanKind::geom:
      if (v == 0.0) return a;
      if (v == 1.0) return b;
      return apply_mean(RepresentingFunction::power(v), a, b);
    case MeanKind::harm:
      if (v == 0.0) return a;
      if (v == 1.0) return b;
      return apply_mean(
          RepresentingFunction("harm_v", [v](double x) { return x / ((1.0 - v) * x + v); }),
          a, b);
    default:
      throw DomainError("no standard weighted operator mean of kind '" +
                        std::string(to_string(kind)) + "'");
  }
}

HPDMatrix op_weighted_harm_by_inversion(const HPDMatrix& a, const HPDMatrix& b, double v) {
  require_same_dim(a, b);
  require_weight(v);
  const HPDMatrix mix((1.0 - v) * a.inverse().matrix() + v * b.inverse().matrix());
  return mix.inverse();
}

HPDMatrix op_weighted_log(OperatorMode mode, const HPDMatrix& a, const HPDMatrix& b,
                          double v) {
  require_same_dim(a, b);
  require_weight(v);
  if (mode == OperatorMode::representing) {
    return apply_mean(RepresentingFunction::weighted_log(v), a, b);
  }
  const auto log_mean = RepresentingFunction::of(SymmetricMean::of(MeanKind::log));
  const HPDMatrix g = op_weighted_standard(MeanKind::geom, a, b, v);
  return op_weighted_standard(MeanKind::arith, apply_mean(log_mean, g, a),
                              apply_mean(log_mean, g, b), v);
}

HPDMatrix op_weighted_identric(OperatorMode mode, const HPDMatrix& a, const HPDMatrix& b,
                               double v) {
  require_same_dim(a, b);
  require_weight(v);
  if (mode == OperatorMode::representing) {
    return apply_mean(RepresentingFunction::weighted_identric(v), a, b);
  }
  const auto identric = RepresentingFunction::of(SymmetricMean::of(MeanKind::identric));
  const HPDMatrix c = op_weighted_standard(MeanKind::arith, a, b, v);
  return op_weighted_standard(MeanKind::geom, apply_mean(identric, c, a),
                              apply_mean(identric, c, b), v);
}

namespace {

constexpr int kGradedLevels = 40;

// 0, 2^-40, ..., 2^-1, 1 - 2^-2, ..., 1 - 2^-40, 1.
std::vector<double> graded_mesh() {
  std::vector<double> mesh = {0.0};
  for (int k = kGradedLevels; k >= 1; --k) mesh.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k <= kGradedLevels; ++k) mesh.push_back(1.0 - std::ldexp(1.0, -k));
  mesh.push_back(1.0);
  return mesh;
}

template <typename Integrand>
ComplexMatrix integrate(Integrand integrand, int n, int max_order, int* order_used) {
  auto rule_sum = [&](double lo, double hi, int order) {
    const numerics::GaussLegendreRule& rule = numerics::gauss_legendre(order);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += (half * rule.weights[i]) * integrand(mid + half * rule.nodes[i]);
    }
    return sum;
  };
  const std::vector<double> mesh = graded_mesh();
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < mesh.size(); ++k) {
    int order = 8;
    ComplexMatrix previous = rule_sum(mesh[k], mesh[k + 1], order);
    while (order < max_order) {
      order *= 2;
      ComplexMatrix current = rule_sum(mesh[k], mesh[k + 1], order);
      const double change = (current - previous).cwiseAbs().maxCoeff();
      const double size = current.cwiseAbs().maxCoeff();
      previous = std::move(current);
      if (change <= 1e-11 * size) break;
    }
    *order_used = std::max(*order_used, order);
    total += previous;
  }
  return total;
}

}  // namespace

LogIntegral op_log_integral(const HPDMatrix& a, const HPDMatrix& b, int max_order) {
  require_same_dim(a, b);
  if (max_order < 8) throw DomainError("quadrature order must be at least 8");
  const int n = a.dim();
  LogIntegral out;

  // A #_t B = A^{1/2} C^t A^{1/2}; only C^t depends on t.
  const HPDMatrix c = middle_factor(a, b);
  const RealVector log_lambda = c.eigenvalues().array().log();
  const ComplexMatrix& u = c.eigenvectors();
  const ComplexMatrix inner = integrate(
      [&](double t) {
        const RealVector powers = (t * log_lambda).array().exp();
        return ComplexMatrix(u * powers.asDiagonal() * u.adjoint());
      },
      n, max_order, &out.max_order_used);
  out.geometric = hermitian_part(a.sqrt() * inner * a.sqrt());

  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const ComplexMatrix resolvent = integrate(
      [&](double t) {
        const ComplexMatrix mix = (1.0 - t) * a.matrix() + t * b.matrix();
        return ComplexMatrix(mix.llt().solve(identity));
      },
      n, max_order, &out.max_order_used);
  out.harmonic = HPDMatrix(hermitian_part(resolvent)).inverse().matrix();
  return out;
}

LoewnerResult loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("Loewner comparison of matrices with different shapes");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(b - a),
                                                      Eigen::EigenvaluesOnly);
  LoewnerResult out;
  out.witness = solver.eigenvalues().minCoeff();
  const double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  out.normalized = out.witness / scale;
  out.holds = out.normalized >= -tol;
  return out;
}

bool OperatorChain::holds() const {
  return std::all_of(links.begin(), links.end(),
                     [](const OperatorChainLink& link) { return link.order.holds; });
}

const std::vector<std::string>& operator_chain_ids() {
  static const std::vector<std::string> ids = {"op_weighted_hga", "op_classic", "op_weighted_log", "op_weighted_identric", "op_mixed_log_identric", "op_weighted_identric_lower"};
  return ids;
}

std::vector<OperatorChain> operator_chains(const HPDMatrix& a, const HPDMatrix& b, double v) {
  require_same_dim(a, b);
  require_weight(v);
  auto arith = [](const HPDMatrix& x, const HPDMatrix& y, double w) {
    return op_weighted_standard(MeanKind::arith, x, y, w);
  };
  auto geom = [](const HPDMatrix& x, const HPDMatrix& y, double w) {
    return op_weighted_standard(MeanKind::geom, x, y, w);
  };
  auto harm = [](const HPDMatrix& x, const HPDMatrix& y, double w) {
    return op_weighted_standard(MeanKind::harm, x, y, w);
  };
  const auto log_mean = RepresentingFunction::of(SymmetricMean::of(MeanKind::log));
  const auto identric = RepresentingFunction::of(SymmetricMean::of(MeanKind::identric));

  const HPDMatrix geom_v = geom(a, b, v);
  const HPDMatrix arith_v = arith(a, b, v);
  const HPDMatrix log_v = op_weighted_log(OperatorMode::representing, a, b, v);
  const HPDMatrix identric_v = op_weighted_identric(OperatorMode::representing, a, b, v);
  const HPDMatrix geom_mid = geom(a, b, 0.5);

  std::vector<OperatorChain> chains;
  chains.push_back({"op_weighted_hga",
                    {"A !_v B", "A #_v B", "A nabla_v B"},
                    {harm(a, b, v), geom_v, arith_v},
                    {}});
  chains.push_back({"op_classic",
                    {"A ! B", "A # B", "L(A,B)", "I(A,B)", "A nabla B"},
                    {harm(a, b, 0.5), geom_mid, apply_mean(log_mean, a, b),
                     apply_mean(identric, a, b), arith(a, b, 0.5)},
                    {}});
  chains.push_back({"op_weighted_log",
                    {"A #_v B", "(A #_{v/2} B) nabla_v (A #_{(1+v)/2} B)", "L_v(A,B)",
                     "(A #_v B) nabla (A nabla_v B)", "A nabla_v B"},
                    {geom_v, arith(geom(a, b, v / 2), geom(a, b, (1 + v) / 2), v), log_v,
                     arith(geom_v, arith_v, 0.5), arith_v},
                    {}});
  chains.push_back({"op_weighted_identric",
                    {"A #_v B", "(A nabla_v B) # (A #_v B)", "I_v(A,B)",
                     "(A nabla_{v/2} B) #_v (A nabla_{(1+v)/2} B)", "A nabla_v B"},
                    {geom_v, geom(arith_v, geom_v, 0.5), identric_v,
                     geom(arith(a, b, v / 2), arith(a, b, (1 + v) / 2), v), arith_v},
                    {}});
  chains.push_back({"op_mixed_log_identric",
                    {"L_v(A,B)", "L(A #_v B, A nabla_v B)", "I(A #_v B, A nabla_v B)",
                     "(A #_v B) nabla (A nabla_v B)"},
                    {log_v, apply_mean(log_mean, geom_v, arith_v),
                     apply_mean(identric, geom_v, arith_v), arith(geom_v, arith_v, 0.5)},
                    {}});
  chains.push_back({"op_weighted_identric_lower",
                    {"A #_v B", "(A nabla_v (A # B)) #_v ((A # B) nabla_v B)", "I_v(A,B)"},
                    {geom_v, geom(arith(a, geom_mid, v), arith(geom_mid, b, v), v),
                     identric_v},
                    {}});
  return chains;
}

std::vector<OperatorChain> check_operator_chains(const HPDMatrix& a, const HPDMatrix& b,
                                                 double v, double tol) {
  std::vector<OperatorChain> chains = operator_chains(a, b, v);
  for (OperatorChain& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.values.size(); ++i) {
      chain.links.push_back({chain.terms[i], chain.terms[i + 1],
                             loewner_leq(chain.values[i].matrix(),
                                         chain.values[i + 1].matrix(), tol)});
    }
  }
  return chains;
}

namespace {

ComplexMatrix random_unitary(int n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ();
}

RealVector random_spectrum(int n, Rng& rng, double log_spread) {
  RealVector lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = std::exp(rng.uniform(-log_spread, log_spread));
  return lambda;
}

}  // namespace

HPDMatrix random_hpd(int n, Rng& rng, double log_spread) {
  if (n < 1) throw DomainError("matrix dimension must be positive");
  const ComplexMatrix q = random_unitary(n, rng);
  const RealVector lambda = random_spectrum(n, rng, log_spread);
  return HPDMatrix(hermitian_part(q * lambda.asDiagonal() * q.adjoint()));
}

std::pair<HPDMatrix, HPDMatrix> random_commuting_pair(int n, Rng& rng, double log_spread) {
  if (n < 1) throw DomainError("matrix dimension must be positive");
  const ComplexMatrix q = random_unitary(n, rng);
  const RealVector lambda = random_spectrum(n, rng, log_spread);
  const RealVector mu = random_spectrum(n, rng, log_spread);
  return {HPDMatrix(hermitian_part(q * lambda.asDiagonal() * q.adjoint())),
          HPDMatrix(hermitian_part(q * mu.asDiagonal() * q.adjoint()))};
}

}  // namespace meanforge
