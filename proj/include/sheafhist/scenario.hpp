// scenario.hpp: scenario documents: the JSON-facing description of spaces,
// states, propositions, contexts, evolutions and requested checks, plus their
// realization over a concrete scalar field.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sheafhist/context.hpp"
#include "sheafhist/histories.hpp"

namespace sheafhist {

struct ScenarioDoc {
  using CxDoc = std::array<double, 2>;  // [re, im]
  using KetDoc = std::vector<CxDoc>;
  using MatDoc = std::vector<std::vector<CxDoc>>;

  struct ObservableDoc {
    MatDoc matrix;
    std::vector<double> eigenvalues;  // full spectrum, distinct
    std::vector<double> delta;        // selected eigenvalues
  };
  struct EvolutionDoc {
    std::vector<double> times;
    std::vector<std::string> steps;  // unitary names, one per consecutive pair
  };
  struct HistoryDoc {
    std::vector<double> times;
    std::vector<std::string> projectors;
    std::vector<std::string> join;  // names of homogeneous histories instead
  };
  struct TruthCheck {
    std::string state, proposition;
  };
  struct HistoryTruthCheck {
    std::string state;
    std::vector<std::string> propositions;
    std::vector<double> times;  // defaults to the leading evolution times
  };
  struct DaseinCheck {
    std::string proposition;
  };
  struct DecohereCheck {
    std::string rho;  // ket or density name
    std::vector<std::string> histories;
    bool real_part_only = false;
  };

  std::string name;
  int dim = 0;
  std::map<std::string, KetDoc> kets;
  std::map<std::string, MatDoc> unitaries;
  std::map<std::string, MatDoc> projectors;
  std::map<std::string, MatDoc> densities;
  std::map<std::string, ObservableDoc> observables;
  std::map<std::string, std::vector<std::string>> contexts;
  std::optional<EvolutionDoc> evolution;
  std::map<std::string, HistoryDoc> histories;
  std::vector<DaseinCheck> dasein_checks;
  std::vector<TruthCheck> truth_checks;
  std::vector<HistoryTruthCheck> history_truth_checks;
  std::optional<DecohereCheck> decohere_check;
  std::string digest;  // of the canonicalized document
};

// Both throw Error(Scenario) with position information on malformed input.
ScenarioDoc parse_scenario(const std::string& text);
ScenarioDoc load_scenario_file(const std::string& path);

template <class R>
struct Scenario {
  ScenarioDoc doc;
  std::map<std::string, Ket<R>> kets;
  std::map<std::string, Matrix<R>> unitaries;
  std::map<std::string, Matrix<R>> projectors;  // declared and derived from observables
  std::map<std::string, Matrix<R>> densities;
  std::unique_ptr<SpectralSpace<R>> space;
  std::map<std::string, HistoryExpr<R>> histories;
  std::optional<Evolution<R>> evolution;

  const Matrix<R>& projector(const std::string& name) const {
    auto it = projectors.find(name);
    if (it == projectors.end())
      throw Error(ErrorKind::MissingName, "unknown projector '" + name + "'");
    return it->second;
  }
  const Ket<R>& ket(const std::string& name) const {
    auto it = kets.find(name);
    if (it == kets.end()) throw Error(ErrorKind::MissingName, "unknown ket '" + name + "'");
    return it->second;
  }
};

namespace detail {
template <class R>
Cx<R> cx_of(const ScenarioDoc::CxDoc& c) {
  return Cx<R>{scenario_real<R>(c[0]), scenario_real<R>(c[1])};
}

template <class R>
Matrix<R> mat_of(const ScenarioDoc::MatDoc& m, int dim, const std::string& what) {
  if (static_cast<int>(m.size()) != dim)
    throw Error(ErrorKind::Dimension, "'" + what + "' must be " + std::to_string(dim) + "x" +
                                          std::to_string(dim));
  Matrix<R> out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(m[i].size()) != dim)
      throw Error(ErrorKind::Dimension, "'" + what + "' has a ragged row");
    for (int j = 0; j < dim; ++j) out.at(i, j) = cx_of<R>(m[i][j]);
  }
  return out;
}
}  // namespace detail

// Spectral projector of a self-adjoint observable onto one listed eigenvalue,
// by Lagrange interpolation over the full listed spectrum.
template <class R>
Matrix<R> eigenprojector(const Matrix<R>& a, const std::vector<double>& spectrum, double lambda) {
  Matrix<R> p = Matrix<R>::identity(a.rows);
  for (double mu : spectrum) {
    if (mu == lambda) continue;
    R denom = scenario_real<R>(lambda) - scenario_real<R>(mu);
    Cx<R> inv = Cx<R>::from(1.0) / Cx<R>{denom, R(0)};
    p = inv * (p * (a - Cx<R>{scenario_real<R>(mu), R(0)} * Matrix<R>::identity(a.rows)));
  }
  return p;
}

template <class R>
Scenario<R> realize_scenario(ScenarioDoc doc) {
  Scenario<R> s;
  int dim = doc.dim;

  for (const auto& [name, kd] : doc.kets) {
    if (static_cast<int>(kd.size()) != dim)
      throw Error(ErrorKind::Dimension, "ket '" + name + "' must have length " + std::to_string(dim));
    Ket<R> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = detail::cx_of<R>(kd[i]);
    if (!is_unit_ket(v)) throw Error(ErrorKind::Invariant, "ket '" + name + "' is not unit norm");
    s.kets.emplace(name, std::move(v));
  }
  for (const auto& [name, md] : doc.unitaries) {
    Matrix<R> u = detail::mat_of<R>(md, dim, name);
    if (!is_unitary(u)) throw Error(ErrorKind::Invariant, "'" + name + "' is not unitary");
    s.unitaries.emplace(name, std::move(u));
  }
  for (const auto& [name, md] : doc.projectors) {
    Matrix<R> p = detail::mat_of<R>(md, dim, name);
    require_projector(p, name);
    s.projectors.emplace(name, std::move(p));
  }
  for (const auto& [name, md] : doc.densities) {
    Matrix<R> r = detail::mat_of<R>(md, dim, name);
    if (!is_density(r)) throw Error(ErrorKind::Invariant, "'" + name + "' is not a density matrix");
    s.densities.emplace(name, std::move(r));
  }

  for (const auto& [name, ob] : doc.observables) {
    Matrix<R> a = detail::mat_of<R>(ob.matrix, dim, name);
    if (!is_self_adjoint(a))
      throw Error(ErrorKind::Invariant, "observable '" + name + "' is not self-adjoint");
    for (size_t i = 0; i < ob.eigenvalues.size(); ++i)
      for (size_t j = i + 1; j < ob.eigenvalues.size(); ++j)
        if (ob.eigenvalues[i] == ob.eigenvalues[j])
          throw Error(ErrorKind::Scenario, "observable '" + name + "' lists a repeated eigenvalue");
    Matrix<R> ann = Matrix<R>::identity(dim);
    for (double ev : ob.eigenvalues)
      ann = ann * (a - Cx<R>{scenario_real<R>(ev), R(0)} * Matrix<R>::identity(dim));
    if (!mat_zero(ann))
      throw Error(ErrorKind::Scenario,
                  "observable '" + name + "' is not annihilated by its eigenvalue list");
    Matrix<R> p = Matrix<R>::zero(dim, dim);
    for (double lv : ob.delta) {
      bool listed = false;
      for (double ev : ob.eigenvalues) listed = listed || ev == lv;
      if (!listed)
        throw Error(ErrorKind::Scenario,
                    "observable '" + name + "' selects an unlisted eigenvalue");
      p = p + eigenprojector(a, ob.eigenvalues, lv);
    }
    require_projector(p, name);
    if (s.projectors.count(name))
      throw Error(ErrorKind::Scenario, "observable '" + name + "' collides with a projector name");
    s.projectors.emplace(name, std::move(p));
  }

  std::vector<Context<R>> ctxs;
  std::vector<std::string> labels;
  for (const auto& [name, gens] : doc.contexts) {
    std::vector<Matrix<R>> g;
    std::vector<std::string> gnames;
    for (const std::string& pn : gens) {
      g.push_back(s.projector(pn));
      gnames.push_back(pn);
    }
    try {
      ctxs.push_back(context_from_commuting(g, dim, gnames));
    } catch (const Error& e) {
      throw Error(e.kind, "context '" + name + "': " + e.what());
    }
    labels.push_back(name);
  }
  if (ctxs.empty()) {
    ctxs.push_back(trivial_context<R>(dim));
    labels.push_back("1");
  }
  s.space = std::make_unique<SpectralSpace<R>>(make_spectral_space(close_poset(ctxs, labels)));

  if (doc.evolution) {
    std::vector<Matrix<R>> steps;
    for (const std::string& un : doc.evolution->steps) {
      auto it = s.unitaries.find(un);
      if (it == s.unitaries.end())
        throw Error(ErrorKind::MissingName, "unknown unitary '" + un + "' in evolution");
      steps.push_back(it->second);
    }
    s.evolution = make_evolution(doc.evolution->times, std::move(steps), dim);
  }

  for (const auto& [name, hd] : doc.histories) {
    if (!hd.join.empty()) continue;
    TimedHistory<R> h;
    h.times = hd.times;
    for (const std::string& pn : hd.projectors) h.projectors.push_back(s.projector(pn));
    validate_history(h);
    s.histories.emplace(name, history_expr(std::move(h)));
  }
  for (const auto& [name, hd] : doc.histories) {
    if (hd.join.empty()) continue;
    HistoryExpr<R> e;
    for (const std::string& hn : hd.join) {
      auto it = s.histories.find(hn);
      if (it == s.histories.end() || it->second.terms.size() != 1 || it->second.complement)
        throw Error(ErrorKind::Scenario, "join '" + name +
                                             "' must reference declared homogeneous histories, "
                                             "and '" +
                                             hn + "' is not one");
      e.terms.push_back(it->second.terms[0]);
    }
    validate_history_expr(e);
    s.histories.emplace(name, std::move(e));
  }

  s.doc = std::move(doc);
  return s;
}

}  // namespace sheafhist
