// histories.hpp: standard consistent-histories quantities used as the
// comparison baseline: class operators, the decoherence functional, and the
// consistency criterion for finite history sets.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sheafhist/matrix.hpp"

namespace sheafhist {

template <class R>
struct TimedHistory {
  std::vector<double> times;
  std::vector<Matrix<R>> projectors;
};

// A disjoint join of homogeneous histories, optionally complemented. The
// class operator is the sum over terms, subtracted from 1 when complemented.
template <class R>
struct HistoryExpr {
  std::vector<TimedHistory<R>> terms;
  bool complement = false;
};

template <class R>
HistoryExpr<R> history_expr(TimedHistory<R> h) {
  HistoryExpr<R> e;
  e.terms.push_back(std::move(h));
  return e;
}

// The always-true history on the same time support.
template <class R>
HistoryExpr<R> unit_history(const std::vector<double>& times, int dim) {
  TimedHistory<R> h;
  h.times = times;
  h.projectors.assign(times.size(), Matrix<R>::identity(dim));
  return history_expr(std::move(h));
}

template <class R>
HistoryExpr<R> negate_history(HistoryExpr<R> e) {
  e.complement = !e.complement;
  return e;
}

template <class R>
void validate_history(const TimedHistory<R>& h) {
  if (h.times.empty() || h.times.size() != h.projectors.size())
    throw Error(ErrorKind::Invariant, "history needs one projector per time");
  for (size_t i = 0; i + 1 < h.times.size(); ++i)
    if (!(h.times[i] < h.times[i + 1]))
      throw Error(ErrorKind::Invariant, "history times must be strictly increasing");
  for (size_t i = 0; i < h.projectors.size(); ++i)
    require_projector(h.projectors[i], "history projector at t=" + std::to_string(h.times[i]));
}

// Histories are disjoint when their tensor projectors are orthogonal, i.e.
// the projector product vanishes in at least one shared slot.
template <class R>
bool histories_disjoint(const TimedHistory<R>& a, const TimedHistory<R>& b) {
  if (a.times != b.times)
    throw Error(ErrorKind::Invariant, "disjointness needs a common time support");
  for (size_t i = 0; i < a.projectors.size(); ++i)
    if (mat_zero(a.projectors[i] * b.projectors[i])) return true;
  return false;
}

template <class R>
struct Evolution {
  int dim = 0;
  std::vector<double> times;     // strictly increasing grid
  std::vector<Matrix<R>> steps;  // steps[i] evolves states from times[i] to times[i+1]
};

template <class R>
Evolution<R> make_evolution(std::vector<double> times, std::vector<Matrix<R>> steps, int dim) {
  if (times.size() < 1 || steps.size() + 1 != times.size())
    throw Error(ErrorKind::Invariant, "evolution needs one step between consecutive times");
  for (size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw Error(ErrorKind::Invariant, "evolution times must be strictly increasing");
  for (const auto& u : steps) {
    if (u.rows != dim || u.cols != dim)
      throw Error(ErrorKind::Dimension, "evolution step has the wrong shape");
    if (!is_unitary(u)) throw Error(ErrorKind::Invariant, "evolution step is not unitary");
  }
  Evolution<R> e;
  e.dim = dim;
  e.times = std::move(times);
  e.steps = std::move(steps);
  return e;
}

template <class R>
int evolution_index(const Evolution<R>& ev, double t) {
  for (size_t i = 0; i < ev.times.size(); ++i)
    if (std::fabs(ev.times[i] - t) <= 1e-12) return static_cast<int>(i);
  throw Error(ErrorKind::MissingName, "no unitary covers time " + std::to_string(t));
}

// The unitary taking states at `from` to states at `to`; inverted via the
// adjoint when `to` is earlier.
template <class R>
Matrix<R> propagator(const Evolution<R>& ev, double to, double from) {
  int a = evolution_index(ev, from), b = evolution_index(ev, to);
  if (a == b) return Matrix<R>::identity(ev.dim);
  if (a < b) {
    Matrix<R> u = ev.steps[a];
    for (int i = a + 1; i < b; ++i) u = ev.steps[i] * u;
    return u;
  }
  return adjoint(propagator(ev, from, to));
}

// Time-interleaved class operator:
// U(t0,t1) a1 U(t1,t2) a2 ... an U(tn,t0), with U(x,y) the propagator from y
// to x.
template <class R>
Matrix<R> class_operator(const TimedHistory<R>& h, const Evolution<R>& ev, double t0) {
  validate_history(h);
  Matrix<R> m = propagator(ev, t0, h.times[0]);
  for (size_t k = 0; k < h.projectors.size(); ++k) {
    m = m * h.projectors[k];
    double next = k + 1 < h.times.size() ? h.times[k + 1] : t0;
    m = m * propagator(ev, h.times[k], next);
  }
  return m;
}

template <class R>
Matrix<R> heisenberg_operator(const Matrix<R>& a, double t, const Evolution<R>& ev, double t0) {
  Matrix<R> u = propagator(ev, t, t0);
  return adjoint(u) * a * u;
}

// Product of Heisenberg-picture projectors, latest time leftmost; the adjoint
// of the interleaved form.
template <class R>
Matrix<R> heisenberg_class_operator(const TimedHistory<R>& h, const Evolution<R>& ev, double t0) {
  validate_history(h);
  Matrix<R> m = Matrix<R>::identity(h.projectors[0].rows);
  for (size_t k = 0; k < h.projectors.size(); ++k)
    m = heisenberg_operator(h.projectors[k], h.times[k], ev, t0) * m;
  return m;
}

template <class R>
void validate_history_expr(const HistoryExpr<R>& e) {
  if (e.terms.empty()) throw Error(ErrorKind::Invariant, "history expression has no terms");
  for (const auto& t : e.terms) validate_history(t);
  for (size_t i = 0; i < e.terms.size(); ++i)
    for (size_t j = i + 1; j < e.terms.size(); ++j)
      if (!histories_disjoint(e.terms[i], e.terms[j]))
        throw Error(ErrorKind::Invariant, "joined histories must be pairwise disjoint");
}

template <class R>
Matrix<R> class_operator_expr(const HistoryExpr<R>& e, const Evolution<R>& ev, double t0) {
  validate_history_expr(e);
  int dim = e.terms[0].projectors[0].rows;
  Matrix<R> m = Matrix<R>::zero(dim, dim);
  for (const auto& t : e.terms) m = m + class_operator(t, ev, t0);
  if (e.complement) m = Matrix<R>::identity(dim) - m;
  return m;
}

template <class R>
Matrix<R> heisenberg_class_operator_expr(const HistoryExpr<R>& e, const Evolution<R>& ev,
                                         double t0) {
  validate_history_expr(e);
  int dim = e.terms[0].projectors[0].rows;
  Matrix<R> m = Matrix<R>::zero(dim, dim);
  for (const auto& t : e.terms) m = m + heisenberg_class_operator(t, ev, t0);
  if (e.complement) m = Matrix<R>::identity(dim) - m;
  return m;
}

// d(a,b) = tr(C_a^* rho C_b) over the interleaved class operators.
template <class R>
Cx<R> decoherence(const HistoryExpr<R>& a, const HistoryExpr<R>& b, const Matrix<R>& rho,
                  const Evolution<R>& ev, double t0) {
  if (!is_density(rho)) throw Error(ErrorKind::Invariant, "decoherence weight is not a density matrix");
  Matrix<R> ca = class_operator_expr(a, ev, t0);
  Matrix<R> cb = class_operator_expr(b, ev, t0);
  return trace(adjoint(ca) * rho * cb);
}

// Additivity in the first argument over a disjoint join.
template <class R>
bool check_additivity(const TimedHistory<R>& a, const TimedHistory<R>& b, const HistoryExpr<R>& c,
                      const Matrix<R>& rho, const Evolution<R>& ev, double t0) {
  HistoryExpr<R> joined;
  joined.terms = {a, b};
  Cx<R> lhs = decoherence(joined, c, rho, ev, t0);
  Cx<R> rhs = decoherence(history_expr(a), c, rho, ev, t0) +
              decoherence(history_expr(b), c, rho, ev, t0);
  return cx_eq(lhs, rhs);
}

// d(not a, c) = d(1, c) - d(a, c).
template <class R>
bool check_negation(const HistoryExpr<R>& a, const HistoryExpr<R>& c, const Matrix<R>& rho,
                    const Evolution<R>& ev, double t0) {
  Cx<R> lhs = decoherence(negate_history(a), c, rho, ev, t0);
  Cx<R> rhs = decoherence(unit_history<R>(a.terms[0].times, rho.rows), c, rho, ev, t0) -
              decoherence(a, c, rho, ev, t0);
  return cx_eq(lhs, rhs);
}

template <class R>
struct ConsistencyResult {
  bool consistent = false;
  std::vector<std::vector<Cx<R>>> d;  // the full decoherence matrix
  double probability_sum = 0.0;       // sum of the diagonal
};

// A finite history set is consistent when all off-diagonal entries of the
// decoherence matrix vanish; optionally only their real parts are required
// to vanish.
template <class R>
ConsistencyResult<R> is_consistent(const std::vector<HistoryExpr<R>>& hs, const Matrix<R>& rho,
                                   const Evolution<R>& ev, double t0, bool real_part_only = false) {
  ConsistencyResult<R> out;
  size_t n = hs.size();
  out.d.assign(n, std::vector<Cx<R>>(n));
  out.consistent = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      out.d[i][j] = decoherence(hs[i], hs[j], rho, ev, t0);
      if (i != j) {
        bool vanishes = real_part_only ? near_zero(out.d[i][j].re) : cx_zero(out.d[i][j]);
        if (!vanishes) out.consistent = false;
      }
    }
  for (size_t i = 0; i < n; ++i) out.probability_sum += real_to_double(out.d[i][i].re);
  return out;
}

// Evaluation of the linear extension of (A1 x ... x An) -> An(tn)...A1(t1)
// on an arbitrary tensor-space operator, by peeling off the first factor.
template <class R>
Matrix<R> hpo_class_operator(const Matrix<R>& m, const std::vector<double>& times, int slot_dim,
                             const Evolution<R>& ev, double t0) {
  int nslots = static_cast<int>(times.size());
  long long want = 1;
  for (int i = 0; i < nslots; ++i) want *= slot_dim;
  if (m.rows != m.cols || m.rows != want)
    throw Error(ErrorKind::Dimension, "operator shape does not match the slot count");
  if (nslots == 1) return heisenberg_operator(m, times[0], ev, t0);
  int rest = m.rows / slot_dim;
  Matrix<R> out = Matrix<R>::zero(slot_dim, slot_dim);
  std::vector<double> tail(times.begin() + 1, times.end());
  for (int i = 0; i < slot_dim; ++i)
    for (int j = 0; j < slot_dim; ++j) {
      Matrix<R> block(rest, rest);
      bool any = false;
      for (int r = 0; r < rest; ++r)
        for (int c = 0; c < rest; ++c) {
          block.at(r, c) = m.at(i * rest + r, j * rest + c);
          any = any || !cx_zero(block.at(r, c));
        }
      if (!any) continue;
      Matrix<R> e(slot_dim, slot_dim);
      e.at(i, j) = Cx<R>::from(1.0);
      out = out + hpo_class_operator(block, tail, slot_dim, ev, t0) *
                      heisenberg_operator(e, times[0], ev, t0);
    }
  return out;
}

}  // namespace sheafhist
