#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/SparseCholesky>

#include "niga/linalg/linalg.hpp"
#include "niga/nitsche/terms.hpp"

namespace niga::nitsche {

struct GammaEstimate {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double gamma0 = 0.0;
  int boundary_dofs = 0;
};

/// Boundary flux form <tau(u), tau(v)> summed over the points.
inline SparseMatrix flux_gram(int n, const std::vector<NitschePoint>& pts) {
  TripletSink sink(n);
  for (const auto& q : pts) sink.add_block(q.dofs, q.dofs, Eigen::MatrixXd(q.T.transpose() * q.T * q.weight));
  return sink.build();
}

/// lambda_max of <tau(u),tau(v)> = lambda a(u,v), gamma0 = multiplier * lambda_max.
///
/// Only DoFs whose basis functions are active at the points enter the dense problem. The energy
/// form is condensed onto them (Schur complement of the interior block), which gives exactly the
/// maximum of the global Rayleigh quotient since tau only sees boundary-active DoFs. DoFs flagged
/// in `fixed` are treated as eliminated.
inline GammaEstimate estimate_gamma0(const SparseMatrix& A, const std::vector<NitschePoint>& pts, double multiplier = 2.0,
                                     const std::vector<char>& fixed = {}) {
  const int n = static_cast<int>(A.rows());
  std::vector<int> role(n, 0);  // 0 interior, 1 boundary, -1 eliminated
  for (int i = 0; i < n && !fixed.empty(); ++i) {
    if (fixed[i]) role[i] = -1;
  }
  for (const auto& q : pts) {
    for (int d : q.dofs) {
      if (role[d] == 0) role[d] = 1;
    }
  }
  std::vector<int> S, O, pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (role[i] == 1) pos[i] = static_cast<int>(S.size()), S.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    if (role[i] == 0) pos[i] = static_cast<int>(O.size()), O.push_back(i);
  }
  if (S.empty()) throw ConfigError("estimate_gamma0: empty boundary selection");

  const SparseMatrix G = flux_gram(n, pts);
  const int ns = static_cast<int>(S.size()), no = static_cast<int>(O.size());
  Eigen::MatrixXd Tss = Eigen::MatrixXd::Zero(ns, ns), Ass = Eigen::MatrixXd::Zero(ns, ns);
  std::vector<Eigen::Triplet<double>> too, tos;
  for (int k = 0; k < G.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(G, k); it; ++it) {
      if (role[it.row()] == 1 && role[it.col()] == 1) Tss(pos[it.row()], pos[it.col()]) += it.value();
    }
  }
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (role[r] == 1 && role[c] == 1) Ass(pos[r], pos[c]) += it.value();
      if (role[r] == 0 && role[c] == 0) too.emplace_back(pos[r], pos[c], it.value());
      if (role[r] == 0 && role[c] == 1) tos.emplace_back(pos[r], pos[c], it.value());
    }
  }
  if (no > 0 && !tos.empty()) {
    SparseMatrix Aoo(no, no), Aos(no, ns);
    Aoo.setFromTriplets(too.begin(), too.end());
    Aos.setFromTriplets(tos.begin(), tos.end());
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(Aoo);
    if (ldlt.info() != Eigen::Success) throw SolverError("estimate_gamma0: interior block is singular");
    const SparseMatrix Aso = Aos.transpose();
    constexpr int kBlock = 128;
    for (int c0 = 0; c0 < ns; c0 += kBlock) {
      const int nc = std::min(kBlock, ns - c0);
      const Eigen::MatrixXd rhs = Eigen::MatrixXd(Aos.middleCols(c0, nc));
      const Eigen::MatrixXd X = ldlt.solve(rhs);
      Ass.middleCols(c0, nc) -= Aso * X;
    }
  }
  Ass = 0.5 * (Ass + Ass.transpose());
  Tss = 0.5 * (Tss + Tss.transpose());
  // Deflate the null space of the condensed energy form (rigid modes, on which the flux also
  // vanishes): keep eigenvectors above 1e-10 of the largest and solve the reduced standard problem.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(Ass);
  if (ea.info() != Eigen::Success) throw SolverError("estimate_gamma0: eigensolver failed on the energy form");
  const double amax = ea.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < ns; ++i) {
    if (ea.eigenvalues()[i] > 1e-10 * amax) keep.push_back(i);
  }
  if (keep.empty()) throw SolverError("estimate_gamma0: energy form vanishes on the boundary DoFs");
  Eigen::MatrixXd V(ns, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    V.col(k) = ea.eigenvectors().col(keep[k]) / std::sqrt(ea.eigenvalues()[keep[k]]);
  }
  const Eigen::MatrixXd Tr = V.transpose() * Tss * V;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> et(0.5 * (Tr + Tr.transpose()), Eigen::EigenvaluesOnly);
  if (et.info() != Eigen::Success) throw SolverError("estimate_gamma0: eigensolver failed");
  GammaEstimate out;
  out.lambda_max = et.eigenvalues().maxCoeff();
  out.lambda_min = et.eigenvalues().minCoeff();
  out.gamma0 = multiplier * out.lambda_max;
  out.boundary_dofs = ns;
  return out;
}

/// gamma0 selected by the policy; the eigenproblem is solved only for eigen-scaled policies.
inline double resolve_gamma(const NitscheConfig& cfg, const SparseMatrix& A, const std::vector<NitschePoint>& pts,
                            const std::vector<char>& fixed = {}) {
  cfg.validate();
  switch (cfg.gamma.kind) {
    case GammaKind::parameter_free: return 0.0;
    case GammaKind::fixed: return cfg.gamma.value;
    case GammaKind::eigen_scaled: return estimate_gamma0(A, pts, cfg.gamma.value, fixed).gamma0;
  }
  return 0.0;
}

}  // namespace niga::nitsche
