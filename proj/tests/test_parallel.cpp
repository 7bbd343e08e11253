#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include "pbw/extremal.hpp"
#include "pbw/vermalab.hpp"
#include "support.hpp"

// Every OpenMP kernel against its serial reference, at several thread counts.

using namespace pbw;
using namespace pbw::testing;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("products") {
  std::mt19937 rng(101);
  for (const char* key : {"osc", "u_sl2_sl2_localized", "lobachevskii_lin2_xi", "uq_sl2_linearization"}) {
    const auto p = build(key);
    for (int trial = 0; trial < 6; ++trial) {
      const Element a = random_element(rng, p, 5, 3), b = random_element(rng, p, 4, 3);
      const Element ref = multiply_serial(p, a, b);
      for (int t : {1, 2, 4}) {
        Threads th(t);
        CHECK(multiply_parallel(p, a, b) == ref);
      }
    }
  }
}

TEST_CASE("confluence") {
  std::mt19937 rng(7);
  for (const auto& e : list_entries()) {
    const auto p = build(e.key, random_params(e, rng));
    const auto ref = check_confluence_serial(p);
    Threads th(3);
    const auto par = check_confluence(p);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(par[i].label(p) == ref[i].label(p));
      CHECK(par[i].resolved == ref[i].resolved);
      CHECK(par[i].left == ref[i].left);
      CHECK(par[i].right == ref[i].right);
    }
  }
}

TEST_CASE("dense rational matrix product") {
  std::mt19937 rng(3);
  for (std::size_t n : {1u, 7u, 24u}) {
    Matrix<Rational> a(n, std::vector<Rational>(n + 2)), b(n + 2, std::vector<Rational>(n));
    for (auto& row : a)
      for (auto& x : row) x = random_rational(rng);
    for (auto& row : b)
      for (auto& x : row) x = random_rational(rng);
    const auto ref = matmul_serial(a, b);
    for (int t : {1, 2, 5}) {
      Threads th(t);
      CHECK(matmul_parallel(a, b) == ref);
    }
  }
}

TEST_CASE("step algebra products") {
  const auto p = build_projector(4);
  const auto& alg = localized_uea();
  std::mt19937 rng(19);
  for (int trial = 0; trial < 4; ++trial) {
    // random transversal elements of low degree
    const Element a = reduce_to_Z(random_element(rng, alg, 3, 2));
    const Element b = reduce_to_Z(random_element(rng, alg, 3, 2));
    const Element ref = z_multiply_serial(a, b, p);
    Threads th(2);
    CHECK(z_multiply(a, b, p) == ref);
  }
}

TEST_CASE("module oracles") {
  const auto p = build_projector(4);
  const auto rel = compute_z_relations(p);
  const auto ref = run_oracles_serial(p, rel, default_weight_pairs(), 2);
  Threads th(3);
  const auto par = run_oracles_parallel(p, rel, default_weight_pairs(), 2);
  REQUIRE(par.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(par[i].title == ref[i].title);
    REQUIRE(par[i].items.size() == ref[i].items.size());
    for (std::size_t j = 0; j < ref[i].items.size(); ++j) {
      CHECK(par[i].items[j].check == ref[i].items[j].check);
      CHECK(par[i].items[j].status == ref[i].items[j].status);
      CHECK(par[i].items[j].witness == ref[i].items[j].witness);
    }
  }
}
