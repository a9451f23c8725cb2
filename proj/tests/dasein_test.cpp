#include <doctest.h>

#include "sheafhist/dasein.hpp"
#include "sheafhist/random.hpp"

using namespace sheafhist;

namespace {

// Oracle for the outer approximation, independent of the overlap rule used by
// dasein_at: projectors of the context algebra are subset sums of minimals,
// the dominating ones are closed under intersection of their index sets, so
// intersecting the index sets of all dominating sums yields the smallest one.
template <class R>
Matrix<R> smallest_dominating(const Matrix<R>& p, const Context<R>& v) {
  auto sum_of = [&](size_t mask) {
    Matrix<R> s = Matrix<R>::zero(v.dim, v.dim);
    for (int i = 0; i < v.points(); ++i)
      if ((mask >> i) & 1) s = s + v.minimals[i];
    return s;
  };
  size_t inter = (size_t{1} << v.points()) - 1;
  for (size_t mask = 0; mask < (size_t{1} << v.points()); ++mask)
    if (proj_leq(p, sum_of(mask))) inter &= mask;
  return sum_of(inter);
}

Context<double> z_ctx() {
  return context_from_commuting<double>({diag_real<double>({1, 0})}, 2, {"Pz+"});
}

Context<double> x_ctx() {
  return context_from_commuting<double>({mat_real<double>({{0.5, 0.5}, {0.5, 0.5}})}, 2, {"Px+"});
}

SpectralSpace<double> zx_space() {
  return make_spectral_space(close_poset<double>({z_ctx(), x_ctx()}, {"z", "x"}));
}

}  // namespace

TEST_CASE("outer approximation equals the smallest dominating algebra element") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    int dim = 2 + static_cast<int>(rng() % 3);
    Context<double> v = context_from_commuting<double>(
        random_commuting_projectors<double>(dim, 1 + static_cast<int>(rng() % 2), rng), dim);
    Matrix<double> p = random_projector<double>(dim, rng);
    CHECK(mat_eq(dasein_at(p, v), smallest_dominating(p, v)));
  }
}

TEST_CASE("outer approximation over the exact field") {
  Rng rng(42);
  for (int t = 0; t < 25; ++t) {
    int dim = 2 + static_cast<int>(rng() % 2);
    Context<Rat> v = context_from_commuting<Rat>(
        random_commuting_projectors<Rat>(dim, 1 + static_cast<int>(rng() % 2), rng), dim);
    Matrix<Rat> p = random_projector<Rat>(dim, rng);
    CHECK(mat_eq(dasein_at(p, v), smallest_dominating(p, v)));
  }
}

TEST_CASE("outer approximation hand values") {
  Matrix<double> pz = diag_real<double>({1, 0});
  Matrix<double> pzm = diag_real<double>({0, 1});
  Matrix<double> px = mat_real<double>({{0.5, 0.5}, {0.5, 0.5}});

  CHECK(mat_eq(dasein_at(px, z_ctx()), Matrix<double>::identity(2)));
  CHECK(mat_eq(dasein_at(pz, z_ctx()), pz));
  CHECK(mat_eq(dasein_at(pzm, z_ctx()), pzm));
  CHECK(mat_eq(dasein_at(pz, x_ctx()), Matrix<double>::identity(2)));
  CHECK(mat_zero(dasein_at(Matrix<double>::zero(2, 2), z_ctx())));
  CHECK(mat_eq(dasein_at(Matrix<double>::identity(2), x_ctx()), Matrix<double>::identity(2)));
  CHECK(mat_eq(dasein_at(pz, trivial_context<double>(2)), Matrix<double>::identity(2)));

  CHECK_THROWS_AS(dasein_at(mat_real<double>({{2, 0}, {0, 0}}), z_ctx()), Error);
  CHECK_THROWS_AS(dasein_at(Matrix<double>::identity(3), z_ctx()), Error);
}

TEST_CASE("daseinization is monotone in the proposition") {
  Rng rng(43);
  SpectralSpace<double> space = zx_space();
  for (int t = 0; t < 100; ++t) {
    Matrix<double> p = random_projector<double>(2, rng);
    Matrix<double> q = proj_join(p, random_projector<double>(2, rng));
    for (const Context<double>& v : space.contexts.contexts)
      CHECK(proj_leq(dasein_at(p, v), dasein_at(q, v)));
    CHECK(includes(dasein(q, space), dasein(p, space)));
  }
}

TEST_CASE("daseinization grows under coarsening") {
  Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    int dim = 3 + static_cast<int>(rng() % 2);
    ContextPoset<double> poset = close_poset<double>(
        {context_from_commuting<double>(random_commuting_projectors<double>(dim, 2, rng), dim),
         context_from_commuting<double>(random_commuting_projectors<double>(dim, 2, rng), dim)});
    Matrix<double> p = random_projector<double>(dim, rng);
    int n = static_cast<int>(poset.contexts.size());
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (poset.order.leq(w, v))
          CHECK(proj_leq(dasein_at(p, poset.contexts[v]), dasein_at(p, poset.contexts[w])));
  }
}

TEST_CASE("daseinization preserves joins and loses meets") {
  Rng rng(45);
  SpectralSpace<double> space = zx_space();
  for (int t = 0; t < 200; ++t) {
    Matrix<double> p = random_projector<double>(2, rng);
    Matrix<double> q = random_projector<double>(2, rng);
    for (const Context<double>& v : space.contexts.contexts)
      CHECK(mat_eq(dasein_at(proj_join(p, q), v), proj_join(dasein_at(p, v), dasein_at(q, v))));
    CHECK(sub_eq(dasein(proj_join(p, q), space), join_sub(dasein(p, space), dasein(q, space))));
    CHECK(includes(meet_sub(dasein(p, space), dasein(q, space)),
                   dasein(proj_meet(p, q), space)));
  }

  Matrix<double> pz = diag_real<double>({1, 0});
  Matrix<double> px = mat_real<double>({{0.5, 0.5}, {0.5, 0.5}});
  Context<double> z = z_ctx();
  Matrix<double> meet_of_outer = proj_meet(dasein_at(pz, z), dasein_at(px, z));
  Matrix<double> outer_of_meet = dasein_at(proj_meet(pz, px), z);
  CHECK(mat_eq(meet_of_outer, pz));
  CHECK(mat_zero(outer_of_meet));
  CHECK_FALSE(mat_eq(meet_of_outer, outer_of_meet));
}

TEST_CASE("pseudo-state and truth sieves on the qubit space") {
  SpectralSpace<double> space = zx_space();
  Ket<double> zp{Cx<double>::from(1.0), Cx<double>::from(0.0)};
  Matrix<double> pz = diag_real<double>({1, 0});
  Matrix<double> pzm = diag_real<double>({0, 1});

  Subobject w = pseudo_state(zp, space);
  int vz = space.contexts.find(z_ctx());
  int vx = space.contexts.find(x_ctx());
  int v1 = space.contexts.trivial;
  REQUIRE(vz >= 0);
  REQUIRE(vx >= 0);

  int selected_at_z = 0;
  for (int i = 0; i < space.points(vz); ++i)
    if (w.contains(vz, i)) ++selected_at_z;
  CHECK(selected_at_z == 1);
  CHECK(w.contains(v1, 0));

  OmegaGlobalElement tru = truth_value(w, dasein(pz, space));
  validate_omega_element(space.presheaf.poset, tru);
  for (int v = 0; v < space.presheaf.poset.n; ++v) CHECK(is_principal(space.presheaf.poset, tru.at[v]));

  OmegaGlobalElement fls = truth_value(w, dasein(pzm, space));
  CHECK_FALSE(fls.at[vz].members[vz]);
  CHECK(fls.at[vz].members[v1]);
  CHECK(fls.at[vx].members[vx]);
  CHECK(fls.at[v1].members[v1]);
}

TEST_CASE("sieve membership at the apex matches the expectation criterion") {
  Rng rng(46);
  for (int t = 0; t < 50; ++t) {
    int dim = 2 + static_cast<int>(rng() % 2);
    SpectralSpace<double> space = make_spectral_space(close_poset<double>(
        {context_from_commuting<double>(random_commuting_projectors<double>(dim, 1, rng), dim),
         context_from_commuting<double>(random_commuting_projectors<double>(dim, 1, rng), dim)}));
    Ket<double> psi = random_ket(dim, rng);
    Matrix<double> p = random_projector<double>(dim, rng);
    OmegaGlobalElement tru = truth_value(pseudo_state(psi, space), dasein(p, space));
    validate_omega_element(space.presheaf.poset, tru);
    for (size_t v = 0; v < space.contexts.contexts.size(); ++v)
      CHECK(static_cast<bool>(tru.at[v].members[v]) ==
            expectation_criterion(psi, p, space.contexts.contexts[v]));
  }
}
