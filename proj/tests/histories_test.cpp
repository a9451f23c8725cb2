#include <doctest.h>

#include "sheafhist/histories.hpp"
#include "sheafhist/random.hpp"

using namespace sheafhist;

namespace {

Matrix<double> rot() { return mat_real<double>({{0.6, 0.8}, {-0.8, 0.6}}); }

Matrix<double> phase_gate() {
  Matrix<double> s = Matrix<double>::zero(2, 2);
  s.at(0, 0) = Cx<double>::from(1.0);
  s.at(1, 1) = Cx<double>{0.0, 1.0};
  return s;
}

Evolution<double> grid_rot_ident() {
  return make_evolution<double>({0, 1, 2}, {rot(), Matrix<double>::identity(2)}, 2);
}

TimedHistory<double> zz_history(int first, int second) {
  TimedHistory<double> h;
  h.times = {1, 2};
  h.projectors = {diag_real<double>({first == 0 ? 1.0 : 0.0, first == 0 ? 0.0 : 1.0}),
                  diag_real<double>({second == 0 ? 1.0 : 0.0, second == 0 ? 0.0 : 1.0})};
  return h;
}

}  // namespace

TEST_CASE("propagators compose along the time grid") {
  Evolution<double> ev = make_evolution<double>({0, 1, 2, 3},
                                                {rot(), phase_gate(), rot()}, 2);
  CHECK(mat_eq(propagator(ev, 1, 1), Matrix<double>::identity(2)));
  CHECK(mat_eq(propagator(ev, 1, 0), rot()));
  CHECK(mat_eq(propagator(ev, 3, 0), rot() * phase_gate() * rot()));
  CHECK(mat_eq(propagator(ev, 3, 0), propagator(ev, 3, 2) * propagator(ev, 2, 0)));
  CHECK(mat_eq(propagator(ev, 0, 3), adjoint(propagator(ev, 3, 0))));
  CHECK(is_unitary(propagator(ev, 3, 1)));
  CHECK_THROWS_AS(propagator(ev, 0.5, 0), Error);
  CHECK(evolution_index(ev, 2.0) == 2);
}

TEST_CASE("evolution construction validates its grid") {
  CHECK_THROWS_AS(make_evolution<double>({1, 0}, {rot()}, 2), Error);
  CHECK_THROWS_AS(make_evolution<double>({0, 1}, {}, 2), Error);
  CHECK_THROWS_AS(make_evolution<double>({0, 1}, {mat_real<double>({{2, 0}, {0, 0}})}, 2), Error);
  CHECK_THROWS_AS(make_evolution<double>({0, 1}, {Matrix<double>::identity(3)}, 2), Error);
  CHECK(make_evolution<double>({5}, {}, 2).times.size() == 1);
}

TEST_CASE("history validation") {
  TimedHistory<double> good = zz_history(0, 0);
  validate_history(good);

  TimedHistory<double> unsorted = good;
  std::swap(unsorted.times[0], unsorted.times[1]);
  CHECK_THROWS_AS(validate_history(unsorted), Error);

  TimedHistory<double> lopsided = good;
  lopsided.projectors.pop_back();
  CHECK_THROWS_AS(validate_history(lopsided), Error);

  TimedHistory<double> skewed = good;
  skewed.projectors[1] = mat_real<double>({{2, 0}, {0, 0}});
  CHECK_THROWS_AS(validate_history(skewed), Error);

  CHECK(histories_disjoint(zz_history(0, 0), zz_history(1, 0)));
  CHECK(histories_disjoint(zz_history(0, 0), zz_history(0, 1)));
  CHECK_FALSE(histories_disjoint(zz_history(0, 0), zz_history(0, 0)));
  TimedHistory<double> other_support = good;
  other_support.times = {0, 2};
  CHECK_THROWS_AS(histories_disjoint(good, other_support), Error);
}

TEST_CASE("class operator hand value on the rotation grid") {
  Evolution<double> ev = grid_rot_ident();
  Matrix<double> c = class_operator(zz_history(0, 0), ev, 0.0);
  CHECK(mat_eq(c, mat_real<double>({{0.36, 0.48}, {0.48, 0.64}})));
  CHECK(mat_eq(class_operator(zz_history(0, 1), ev, 0.0), Matrix<double>::zero(2, 2)));

  HistoryExpr<double> unit = unit_history<double>({1, 2}, 2);
  CHECK(mat_eq(class_operator_expr(unit, ev, 0.0), Matrix<double>::identity(2)));
  CHECK(mat_eq(class_operator_expr(negate_history(history_expr(zz_history(0, 0))), ev, 0.0),
               Matrix<double>::identity(2) - c));
}

TEST_CASE("interleaved and Heisenberg class operators are adjoints") {
  Rng rng(71);
  Evolution<double> ev = make_evolution<double>({0, 1, 2}, {rot(), phase_gate()}, 2);
  for (int t = 0; t < 50; ++t) {
    TimedHistory<double> h;
    h.times = {1, 2};
    h.projectors = {random_projector<double>(2, rng), random_projector<double>(2, rng)};
    CHECK(mat_eq(class_operator(h, ev, 0.0), adjoint(heisenberg_class_operator(h, ev, 0.0))));
  }
}

TEST_CASE("decoherence functional on the definite z-basis family") {
  Evolution<double> ev = grid_rot_ident();
  Matrix<double> rho = diag_real<double>({1, 0});
  std::vector<HistoryExpr<double>> hs;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) hs.push_back(history_expr(zz_history(a, b)));

  ConsistencyResult<double> cr = is_consistent(hs, rho, ev, 0.0);
  CHECK(cr.consistent);
  CHECK(real_to_double(cr.d[0][0].re) == doctest::Approx(0.36));
  CHECK(real_to_double(cr.d[3][3].re) == doctest::Approx(0.64));
  CHECK(cx_zero(cr.d[1][1]));
  CHECK(cx_zero(cr.d[2][2]));
  CHECK(cx_zero(cr.d[0][3]));
  CHECK(cr.probability_sum == doctest::Approx(1.0));

  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = 0; j < hs.size(); ++j)
      CHECK(cx_eq(cr.d[i][j], conj(cr.d[j][i])));

  CHECK(check_additivity(zz_history(0, 0), zz_history(1, 1), hs[1], rho, ev, 0.0));
  CHECK(check_negation(hs[0], hs[3], rho, ev, 0.0));
  HistoryExpr<double> unit = unit_history<double>({1, 2}, 2);
  CHECK(cx_eq(decoherence(unit, unit, rho, ev, 0.0), Cx<double>::from(1.0)));
}

TEST_CASE("decoherence of the z-basis family is exact over the rationals") {
  Matrix<Rat> r(2, 2);
  r.at(0, 0) = Cx<Rat>{Rat(3) / Rat(5), Rat(0)};
  r.at(0, 1) = Cx<Rat>{Rat(4) / Rat(5), Rat(0)};
  r.at(1, 0) = Cx<Rat>{Rat(-4) / Rat(5), Rat(0)};
  r.at(1, 1) = Cx<Rat>{Rat(3) / Rat(5), Rat(0)};
  Evolution<Rat> ev = make_evolution<Rat>({0, 1, 2}, {r, Matrix<Rat>::identity(2)}, 2);
  Matrix<Rat> rho = diag_real<Rat>({1, 0});

  std::vector<HistoryExpr<Rat>> hs;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      TimedHistory<Rat> h;
      h.times = {1, 2};
      h.projectors = {diag_real<Rat>({a == 0 ? 1.0 : 0.0, a == 0 ? 0.0 : 1.0}),
                      diag_real<Rat>({b == 0 ? 1.0 : 0.0, b == 0 ? 0.0 : 1.0})};
      hs.push_back(history_expr(std::move(h)));
    }
  ConsistencyResult<Rat> cr = is_consistent(hs, rho, ev, 0.0);
  CHECK(cr.consistent);
  CHECK(cr.d[0][0].re == Rat(9) / Rat(25));
  CHECK(cr.d[3][3].re == Rat(16) / Rat(25));
  CHECK(cr.d[1][1].re == Rat(0));
  CHECK(cr.d[2][2].re == Rat(0));
  CHECK(cr.d[0][0].re + cr.d[3][3].re == Rat(1));
}

TEST_CASE("both orderings of the decoherence functional agree") {
  Rng rng(72);
  Evolution<double> ev = make_evolution<double>({0, 1, 2}, {phase_gate(), rot()}, 2);
  for (int t = 0; t < 50; ++t) {
    TimedHistory<double> a, b;
    a.times = b.times = {1, 2};
    a.projectors = {random_projector<double>(2, rng), random_projector<double>(2, rng)};
    b.projectors = {random_projector<double>(2, rng), random_projector<double>(2, rng)};
    Matrix<double> rho = random_density<double>(2, rng);

    Cx<double> via_interleaved = decoherence(history_expr(a), history_expr(b), rho, ev, 0.0);
    Matrix<double> ha = heisenberg_class_operator(a, ev, 0.0);
    Matrix<double> hb = heisenberg_class_operator(b, ev, 0.0);
    Cx<double> via_heisenberg = trace(ha * rho * adjoint(hb));
    CHECK(cx_eq(via_interleaved, via_heisenberg));
  }
}

TEST_CASE("additivity and negation hold for random disjoint joins") {
  Rng rng(73);
  Evolution<double> ev = make_evolution<double>({0, 1, 2}, {rot(), phase_gate()}, 2);
  for (int t = 0; t < 30; ++t) {
    Matrix<double> p = random_projector_rank<double>(2, 1, rng);
    TimedHistory<double> a, b, c;
    a.times = b.times = c.times = {1, 2};
    a.projectors = {p, random_projector<double>(2, rng)};
    b.projectors = {Matrix<double>::identity(2) - p, random_projector<double>(2, rng)};
    c.projectors = {random_projector<double>(2, rng), random_projector<double>(2, rng)};
    Matrix<double> rho = random_density<double>(2, rng);

    CHECK(check_additivity(a, b, history_expr(c), rho, ev, 0.0));
    CHECK(check_negation(history_expr(a), history_expr(c), rho, ev, 0.0));
  }

  HistoryExpr<double> overlapping;
  overlapping.terms = {zz_history(0, 0), zz_history(0, 0)};
  CHECK_THROWS_AS(validate_history_expr(overlapping), Error);
  CHECK_THROWS_AS(decoherence(overlapping, overlapping, diag_real<double>({1, 0}),
                              grid_rot_ident(), 0.0),
                  Error);
  CHECK_THROWS_AS(decoherence(history_expr(zz_history(0, 0)), history_expr(zz_history(0, 0)),
                              diag_real<double>({0.7, 0.7}), grid_rot_ident(), 0.0),
                  Error);
}

TEST_CASE("the block-peeling class operator extends the homogeneous one linearly") {
  Rng rng(74);
  Evolution<double> ev = make_evolution<double>({0, 1, 2}, {rot(), phase_gate()}, 2);
  for (int t = 0; t < 50; ++t) {
    Matrix<double> a = random_projector<double>(2, rng);
    Matrix<double> b = random_projector<double>(2, rng);
    TimedHistory<double> h;
    h.times = {1, 2};
    h.projectors = {a, b};
    CHECK(mat_eq(hpo_class_operator(kron(a, b), {1, 2}, 2, ev, 0.0),
                 heisenberg_class_operator(h, ev, 0.0)));
  }

  Evolution<double> ev3 = make_evolution<double>({0, 1, 2, 3}, {rot(), phase_gate(), rot()}, 2);
  for (int t = 0; t < 10; ++t) {
    Matrix<double> a = random_projector<double>(2, rng);
    Matrix<double> b = random_projector<double>(2, rng);
    Matrix<double> c = random_projector<double>(2, rng);
    TimedHistory<double> h;
    h.times = {1, 2, 3};
    h.projectors = {a, b, c};
    CHECK(mat_eq(hpo_class_operator(kron(kron(a, b), c), {1, 2, 3}, 2, ev3, 0.0),
                 heisenberg_class_operator(h, ev3, 0.0)));
  }

  Matrix<double> m1 = kron(random_projector<double>(2, rng), random_projector<double>(2, rng));
  Matrix<double> m2 = kron(random_projector<double>(2, rng), random_projector<double>(2, rng));
  CHECK(mat_eq(hpo_class_operator(m1 + m2, {1, 2}, 2, ev, 0.0),
               hpo_class_operator(m1, {1, 2}, 2, ev, 0.0) +
                   hpo_class_operator(m2, {1, 2}, 2, ev, 0.0)));
  CHECK_THROWS_AS(hpo_class_operator(m1, {1, 2, 3}, 2, ev3, 0.0), Error);
}
