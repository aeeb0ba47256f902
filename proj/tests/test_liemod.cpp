#include "kraw/hyperg.hpp"
#include "kraw/liemod.hpp"

#include "oracles.hpp"

#include <doctest.h>

using kraw::HomogPoly;
using kraw::Matrix;
using kraw::MultiIndex;
using kraw::ParameterSet;
using kraw::Rational;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }

ParameterSet<Rational> half() { return kraw::griffiths_from_p(std::vector<Rational>{r(1, 2), r(1, 2)}); }
ParameterSet<Rational> milch() { return kraw::family_milch(std::vector<Rational>{r(1, 2), r(1, 4), r(1, 4)}); }

Matrix<Rational> mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  Matrix<Rational> m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<ParameterSet<Rational>> representatives() {
  return {half(), kraw::griffiths_from_p(std::vector<Rational>{r(1, 3), r(2, 3)}), milch(),
          kraw::family_hoare_rahman(r(1), r(2), r(3), r(4)), kraw::family_ds(r(2), 2)};
}

}  // namespace

TEST_CASE("Cartan basis matrices") {
  CHECK(kraw::basis_phi<Rational>(1, 1) == mat({{r(-1, 2), 0}, {0, r(1, 2)}}));
  const auto e02 = kraw::basis_e<Rational>(2, 0, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(e02(i, j) == (i == 0 && j == 2 ? 1 : 0));
  for (int d = 1; d <= 3; ++d) {
    auto phi0 = Matrix<Rational>::identity(static_cast<std::size_t>(d + 1)) * Rational(-1, d + 1);
    phi0(0, 0) += 1;
    CHECK(kraw::basis_phi<Rational>(d, 0) == phi0);
    for (int i = 0; i <= d; ++i) CHECK(kraw::basis_phi<Rational>(d, i).trace() == 0);
  }
}

TEST_CASE("conjugator") {
  const auto c = kraw::conjugator(half());
  CHECK(c.r == mat({{r(1, 2), r(1, 2)}, {r(1, 2), r(-1, 2)}}));
  for (const auto& k : representatives()) {
    const auto ck = kraw::conjugator(k);
    const auto n = static_cast<std::size_t>(k.d() + 1);
    CHECK(ck.r * ck.r_inv == Matrix<Rational>::identity(n));
    CHECK(ck.r_inv * ck.r == Matrix<Rational>::identity(n));
  }
  const auto ds = kraw::family_ds(r(2), 2);
  CHECK(kraw::conjugator(ds).r_inv == Rational(4) * (ds.P() * ds.u()));
}

TEST_CASE("dual Cartan basis") {
  CHECK(kraw::dual_phi(half(), 1) == mat({{0, r(-1, 2)}, {r(-1, 2), 0}}));
  for (const auto& k : representatives()) {
    const int d = k.d();
    for (int i = 1; i <= d; ++i) {
      CHECK(kraw::dual_phi(k, i) == kraw::dual_phi_closed_form(k, i));
      CHECK(kraw::phi_from_dual_expansion(k, i) == kraw::basis_phi<Rational>(d, i));
      CHECK(kraw::dual_phi(k, i).trace() == 0);
    }
    const auto phi0 = kraw::dual_phi(k, 0);
    for (int row = 0; row <= d; ++row)
      for (int col = 0; col <= d; ++col)
        CHECK(phi0(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) ==
              k.pt(row) - (row == col ? Rational(1, d + 1) : Rational(0)));
  }
}

TEST_CASE("antiautomorphism") {
  for (const auto& k : representatives()) {
    const int d = k.d();
    for (int i = 0; i <= d; ++i) {
      CHECK(kraw::antiauto(k, kraw::basis_phi<Rational>(d, i)) == kraw::basis_phi<Rational>(d, i));
      CHECK(kraw::antiauto(k, kraw::dual_phi(k, i)) == kraw::dual_phi(k, i));
      for (int j = 0; j <= d; ++j) {
        if (i == j) continue;
        CHECK(kraw::antiauto(k, kraw::basis_e<Rational>(d, i, j)) ==
              (k.pt(j) / k.pt(i)) * kraw::basis_e<Rational>(d, j, i));
        CHECK(kraw::antiauto(k, kraw::dual_e(k, i, j)) == (k.p(j) / k.p(i)) * kraw::dual_e(k, j, i));
        const auto a = kraw::basis_e<Rational>(d, i, j);
        const auto b = kraw::dual_e(k, j, i);
        CHECK(kraw::antiauto(k, a * b) == kraw::antiauto(k, b) * kraw::antiauto(k, a));
        CHECK(kraw::antiauto(k, kraw::antiauto(k, b)) == b);
      }
    }
    CHECK(kraw::check_antiauto(k).pass);
  }
}

TEST_CASE("generation identity") {
  CHECK(kraw::check_generation(milch()).pass);
  CHECK(kraw::check_generation(kraw::griffiths_from_p(std::vector<Rational>{r(1, 3), r(2, 3)})).pass);

  auto raw = milch().raw();
  raw.pt[1] += 1;
  const auto forged = kraw::testing::forge(raw);
  const auto rep = kraw::check_generation(forged);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("module action") {
  const auto x200 = HomogPoly<Rational>::monomial(MultiIndex{{2, 0, 0}});
  const auto moved = kraw::act(kraw::basis_e<Rational>(2, 1, 0), x200);
  CHECK(moved == HomogPoly<Rational>::monomial(MultiIndex{{1, 1, 0}}, r(2)));

  const kraw::SimplexLattice lat(2, 3);
  for (const auto& lambda : lat.points())
    for (int i = 1; i <= 2; ++i) {
      const auto f = HomogPoly<Rational>::monomial(lambda);
      CHECK(kraw::act(kraw::basis_phi<Rational>(2, i), f) == (Rational(lambda[static_cast<std::size_t>(i)]) - 1) * f);
    }

  // e_{i,j} kills x^lambda when lambda_j = 0.
  const auto x030 = HomogPoly<Rational>::monomial(MultiIndex{{0, 3, 0}});
  CHECK(kraw::act(kraw::basis_e<Rational>(2, 1, 2), x030).is_zero());

  CHECK(kraw::check_representation(milch(), 3).pass);
}

TEST_CASE("dual monomials") {
  const auto k = half();
  HomogPoly<Rational> want(1, 2);
  want.add(MultiIndex{{2, 0}}, r(1, 4));
  want.add(MultiIndex{{0, 2}}, r(-1, 4));
  CHECK(kraw::xtilde_monomial(k, 2, MultiIndex{{1, 1}}) == want);

  // x~_0^N = (sum_j p~_j x_j)^N, multinomial expansion.
  const auto m = milch();
  const int N = 3;
  const auto top = kraw::xtilde_monomial(m, N, MultiIndex{{N, 0, 0}});
  for (const auto& lambda : kraw::enumerate_lattice(2, N)) {
    Rational c = oracle::fact(N);
    for (int j = 0; j <= 2; ++j) {
      const int e = lambda[static_cast<std::size_t>(j)];
      Rational pw = 1;
      for (int t = 0; t < e; ++t) pw *= m.pt(j);
      c *= pw / oracle::fact(e);
    }
    CHECK(top.coefficient(lambda) == c);
  }

  const kraw::DualBasis<Rational> basis(m, N);
  for (std::size_t i = 0; i < basis.lattice().size(); ++i) {
    const auto coords = basis.coordinates(basis.element(i));
    for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1 : 0));
  }
}

TEST_CASE("bilinear form") {
  const auto k = half();
  const auto x11 = HomogPoly<Rational>::monomial(MultiIndex{{1, 1}});
  const auto x20 = HomogPoly<Rational>::monomial(MultiIndex{{2, 0}});
  CHECK(kraw::bilinear(k, 2, x11, x11) == 16);
  CHECK(kraw::bilinear(k, 2, x11, x20) == 0);

  const auto d20 = kraw::xtilde_monomial(k, 2, MultiIndex{{2, 0}});
  CHECK(kraw::bilinear(k, 2, d20, d20) == 8);

  CHECK(kraw::check_dual_norms(milch(), 3).pass);
  CHECK(kraw::check_dual_norms(kraw::family_ds(r(2), 2), 3).pass);

  auto raw = milch().raw();
  raw.pt[1] += r(1, 10);
  raw.pt[2] -= r(1, 10);
  CHECK_FALSE(kraw::check_dual_norms(kraw::testing::forge(raw), 2).pass);
}

TEST_CASE("pairing evaluation") {
  const auto k = half();
  CHECK(kraw::pairing_eval(k, 2, MultiIndex{{1, 1}}, MultiIndex{{1, 1}}) == 0);

  const auto m = milch();
  for (int N = 0; N <= 3; ++N)
    for (const auto& n : kraw::enumerate_lattice(2, N)) {
      CHECK(kraw::pairing_eval(m, N, n, MultiIndex{{N, 0, 0}}) == 1);
      for (const auto& nt : kraw::enumerate_lattice(2, N))
        CHECK(kraw::pairing_eval(m, N, n, nt) == oracle::hypergeometric(m, N, n.primed(), nt.primed()));
    }
}

TEST_CASE("adjacency and transition") {
  CHECK(kraw::adjacent(MultiIndex{{1, 2, 0}}, MultiIndex{{2, 1, 0}}));
  CHECK(kraw::adjacent(MultiIndex{{1, 2, 0}}, MultiIndex{{1, 1, 1}}));
  CHECK_FALSE(kraw::adjacent(MultiIndex{{1, 2, 0}}, MultiIndex{{1, 2, 0}}));
  CHECK_FALSE(kraw::adjacent(MultiIndex{{2, 1, 0}}, MultiIndex{{0, 2, 1}}));

  for (const auto& k : representatives())
    for (int N = 1; N <= 3; ++N) {
      CAPTURE(N);
      CHECK(kraw::check_adjacency(k, N).pass);
      CHECK(kraw::check_transition(k, N).pass);
    }
}

TEST_CASE("index errors") {
  CHECK_THROWS_AS(kraw::basis_phi<Rational>(2, 3), kraw::DomainError);
  CHECK_THROWS_AS(kraw::basis_e<Rational>(2, 1, 1), kraw::DomainError);
  CHECK_THROWS_AS(kraw::dual_phi(milch(), 5), kraw::DomainError);
}
