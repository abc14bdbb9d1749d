#include <functional>

#include "doctest.h"
#include "support/spaces.hpp"

using namespace mvtop;
using fixtures::sierpinski;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Schema;
}

}  // namespace

TEST_CASE("validate accepts the Sierpinski table") {
  auto s = FiniteSpace::validate({"0", "1"}, {{"0", "1"}, {"1"}});
  CHECK(s.size() == 2);
  CHECK(s.min_open(0) == PointSet{0, 1});
  CHECK(s.min_open(1) == PointSet{1});
}

TEST_CASE("validate names the violated axiom") {
  CHECK(kind_of([] { FiniteSpace::validate({"0"}, {{}}); }) == ErrorKind::MissingSelf);
  CHECK(kind_of([] { FiniteSpace::validate({"0", "1"}, {{"1"}, {"1"}}); }) == ErrorKind::MissingSelf);
  CHECK(kind_of([] {
          FiniteSpace::validate({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}, {"2"}});
        }) == ErrorKind::NotTransitive);
  CHECK(kind_of([] { FiniteSpace::validate({"0", "0"}, {{"0"}, {"0"}}); }) == ErrorKind::DuplicateLabel);
  CHECK(kind_of([] { FiniteSpace::validate({"0"}, {{"0", "z"}}); }) == ErrorKind::UnknownLabel);
  std::vector<std::string> many;
  std::vector<std::vector<std::string>> nb;
  for (int i = 0; i < 40; ++i) many.push_back(std::to_string(i));
  for (int i = 0; i < 40; ++i) nb.push_back({many[i]});
  CHECK(kind_of([&] { FiniteSpace::validate(many, nb); }) == ErrorKind::SizeLimit);
}

TEST_CASE("is_open on Sierpinski") {
  auto s = sierpinski();
  CHECK(s->is_open(PointSet{1}));
  CHECK_FALSE(s->is_open(PointSet{0}));
  CHECK(s->is_open(PointSet{}));
  CHECK(s->is_open(s->points()));
}

TEST_CASE("open_sets in canonical order") {
  using V = std::vector<PointSet>;
  CHECK(sierpinski()->open_sets() == V{PointSet{}, PointSet{1}, PointSet{0, 1}});
  CHECK(models::discrete(2).open_sets() == V{PointSet{}, PointSet{0}, PointSet{1}, PointSet{0, 1}});
  CHECK(models::indiscrete(2).open_sets() == V{PointSet{}, PointSet{0, 1}});
}

TEST_CASE("open_sets is exactly the set of open subsets") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto x = models::random_space(5, seed);
    auto opens = x.open_sets();
    std::size_t count = 0;
    for (std::uint32_t b = 0; b < 32; ++b) {
      PointSet a(b);
      bool listed = std::find(opens.begin(), opens.end(), a) != opens.end();
      CHECK(listed == x.is_open(a));
      count += x.is_open(a);
    }
    CHECK(count == opens.size());
  }
}

TEST_CASE("closure") {
  auto s = sierpinski();
  CHECK(s->closure(PointSet{1}) == PointSet{0, 1});
  CHECK(s->closure(PointSet{0}) == PointSet{0});
  CHECK(s->closure(PointSet{}).empty());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto x = models::random_space(4, seed);
    for (std::uint32_t b = 0; b < 16; ++b) {
      PointSet a(b), c = x.closure(a);
      CHECK(a.subset_of(c));
      CHECK(x.closure(c) == c);
      CHECK(x.is_open(c.complement(4)));
      for (std::uint32_t b2 = 0; b2 < 16; ++b2)
        if (a.subset_of(PointSet(b2))) CHECK(c.subset_of(x.closure(PointSet(b2))));
    }
  }
}

TEST_CASE("product neighbourhoods") {
  auto s = sierpinski();
  auto s2 = product(s, s);
  CHECK(s2.size() == 4);
  CHECK(s2.min_open(0) == s2.points());
  CHECK(s2.label(1) == "0,1");

  auto d2 = fixtures::discrete(2);
  auto d4 = product(d2, d2);
  for (int p = 0; p < 4; ++p) CHECK(d4.min_open(p) == PointSet::singleton(p));

  auto x = share(models::circle4());
  auto xp = product(x, share(models::point()));
  std::vector<int> id{0, 1, 2, 3};
  CHECK(is_isomorphism(*x, xp, id));
}

TEST_CASE("product opens are unions of basic boxes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto x = share(models::random_space(2 + seed % 3, seed));
    auto y = share(models::random_space(2 + (seed / 3) % 3, seed + 100));
    auto xy = product(x, y);
    const int ny = y->size();
    std::vector<PointSet> boxes;
    for (int a = 0; a < x->size(); ++a)
      for (int b = 0; b < ny; ++b) {
        PointSet box;
        for (int p : x->min_open(a))
          for (int q : y->min_open(b)) box.insert(p * ny + q);
        boxes.push_back(box);
      }
    for (std::uint32_t bits = 0; bits < (1u << xy.size()); ++bits) {
      PointSet c(bits), u;
      for (PointSet box : boxes)
        if (box.subset_of(c)) u |= box;
      CHECK(xy.is_open(c) == (u == c));
    }
  }
}

TEST_CASE("subspace") {
  auto one = subspace(*sierpinski(), PointSet{0});
  CHECK(one.space.size() == 1);
  CHECK(one.embedding == std::vector<int>{0});

  auto j = subspace(models::fence(2), PointSet{0, 1});
  CHECK(is_isomorphism(j.space, models::sierpinski(), {0, 1}));

  auto x = models::circle4();
  auto all = subspace(x, x.points());
  CHECK(all.space == x);

  CHECK(kind_of([&] { subspace(x, PointSet{}); }) == ErrorKind::EmptySubspace);
}

TEST_CASE("derived spaces still satisfy the axioms") {
  auto check_axioms = [](const FiniteSpace& x) {
    for (int p = 0; p < x.size(); ++p) {
      CHECK(x.min_open(p).contains(p));
      for (int q : x.min_open(p)) CHECK(x.min_open(q).subset_of(x.min_open(p)));
    }
  };
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto x = share(models::random_space(3, seed));
    auto y = share(models::random_space(3, seed + 7));
    check_axioms(product(x, y));
    check_axioms(subspace(*x, PointSet{0, 2}).space);
  }
}
