// oracle.hpp
// Brute-force validation path for the teleportation protocol: explicit
// joint-state matrices, explicit projectors, explicit corrections.

#pragma once

#include <optional>
#include <vector>

#include "fockport/joint.hpp"
#include "fockport/protocol.hpp"

namespace fockport {

struct OracleOutcome {
  OutcomeLabel label;
  double probability = 0.0;
  std::optional<TwoModeDensity> state;
};

struct OracleReport {
  std::vector<OracleOutcome> per_outcome;
  TwoModeDensity averaged;
};

namespace detail {

// 1_1 (x) P_23^{(l,lambda)} (x) 1_4 as an explicit matrix on the
// four-mode composite basis.
inline Matrix embed_projector(const FourModeBasis& basis,
                              const MeasurementBasis& mb,
                              const OutcomeLabel& outcome) {
  const Vector& phi = mb.vector(outcome);
  Matrix p = Matrix::Zero(basis.size(), basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    const auto& sa = basis.state(a);
    const cplx wa = phi(mb.pair_index(sa[1], sa[2]));
    if (wa == cplx{}) continue;
    for (int b = 0; b < basis.size(); ++b) {
      const auto& sb = basis.state(b);
      if (sb[0] != sa[0] || sb[3] != sa[3]) continue;
      const cplx wb = phi(mb.pair_index(sb[1], sb[2]));
      if (wb == cplx{}) continue;
      p(a, b) = wa * std::conj(wb);
    }
  }
  return p;
}

}  // namespace detail

// Runs the full protocol by explicit matrix algebra on the composite
// support: project, partial-trace modes 2 and 3, apply Bob's correction
// on mode 4, and extract the fixed-N block. Independent of the analytic
// per-outcome formulas in protocol.hpp.
inline OracleReport oracle_full_protocol(const PureNumberState& initial,
                                         const ResourceState& resource) {
  const int N = initial.n_particles();
  const int nu = resource.n_particles();
  const JointState joint(initial, resource);
  const MeasurementBasis mb(N, nu);

  const int d4 = std::max(N, nu) + 1;
  Matrix averaged = Matrix::Zero(N + 1, N + 1);
  std::vector<OracleOutcome> outcomes;
  outcomes.reserve(mb.outcomes().size());

  for (const OutcomeLabel& o : mb.outcomes()) {
    const Matrix p = detail::embed_projector(joint.basis(), mb, o);
    const Matrix projected = p * joint.matrix() * p;
    const double prob = projected.trace().real();
    if (prob < 1e-15) {
      outcomes.push_back({o, prob, std::nullopt});
      continue;
    }
    ModePairDensity pair =
        partial_trace_23(JointState(joint.basis(), projected));

    // Correction acts on mode 4 only, so it commutes with the trace over
    // modes 2 and 3.
    const Matrix v = bob_correction(o.l, o.lambda, N, nu);
    Matrix big_v = Matrix::Zero(pair.matrix.rows(), pair.matrix.cols());
    for (int k1 = 0; k1 <= N; ++k1)
      for (int a = 0; a < d4; ++a)
        for (int b = 0; b < d4; ++b)
          if (v(a, b) != cplx{})
            big_v(pair.index(k1, a), pair.index(k1, b)) = v(a, b);
    pair.matrix = (big_v * pair.matrix * big_v.adjoint()).eval();

    TwoModeDensity state =
        fixed_total_block(pair, N, /*normalized=*/false);
    averaged += state.matrix();
    outcomes.push_back(
        {o, prob, TwoModeDensity(N, state.matrix() / prob, true)});
  }

  return OracleReport{std::move(outcomes),
                      TwoModeDensity(N, std::move(averaged), true)};
}

}  // namespace fockport
