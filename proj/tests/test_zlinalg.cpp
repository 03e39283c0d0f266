#include <doctest.h>

#include <random>

#include "csp/abelian.hpp"
#include "csp/int_matrix.hpp"

using namespace csp::zlinalg;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Int>> r;
    for (auto& row : rows) r.push_back(std::vector<Int>(row.begin(), row.end()));
    return IntMatrix::from_rows(r);
}

bool is_hnf_shape(const IntMatrix& h) {
    std::size_t last_pivot = 0;
    bool seen = false;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t p = h.cols();
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { p = j; break; }
        if (p == h.cols()) {
            for (std::size_t k = i; k < h.rows(); ++k)
                for (std::size_t j = 0; j < h.cols(); ++j)
                    if (h.at(k, j) != 0) return false;
            break;
        }
        if (seen && p <= last_pivot) return false;
        if (h.at(i, p) <= 0) return false;
        for (std::size_t k = 0; k < i; ++k)
            if (h.at(k, p) < 0 || h.at(k, p) >= h.at(i, p)) return false;
        last_pivot = p;
        seen = true;
    }
    return true;
}

// brute-force oracle: all HNF-shaped U*A over small unimodular U
std::vector<IntMatrix> brute_hnf_2x2(const IntMatrix& a) {
    std::vector<IntMatrix> found;
    for (long p = -3; p <= 3; ++p)
        for (long q = -3; q <= 3; ++q)
            for (long r = -3; r <= 3; ++r)
                for (long s = -3; s <= 3; ++s) {
                    if (p * s - q * r != 1 && p * s - q * r != -1) continue;
                    IntMatrix u = mat({{p, q}, {r, s}});
                    IntMatrix h = u * a;
                    if (!is_hnf_shape(h)) continue;
                    bool dup = false;
                    for (auto& f : found)
                        if (f == h) dup = true;
                    if (!dup) found.push_back(h);
                }
    return found;
}

std::mt19937 rng(12345);

IntMatrix random_matrix(std::size_t r, std::size_t c, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

IntMatrix random_unimodular(std::size_t n) {
    // product of random elementary row operations
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int step = 0; step < 12; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Int q = coef(rng);
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) += q * m.at(j, k);
    }
    return m;
}

} // namespace

TEST_CASE("hnf fixed points and gcd column") {
    IntMatrix id = IntMatrix::identity(2);
    auto r = hnf(id);
    CHECK(r.h == id);
    CHECK(r.u == id);

    IntMatrix col = mat({{2}, {3}});
    auto rc = hnf(col);
    CHECK(rc.h.at(0, 0) == 1);
    CHECK(rc.h.at(1, 0) == 0);
    CHECK(rc.u * col == rc.h);
}

TEST_CASE("hnf derived example against brute force") {
    IntMatrix a = mat({{2, 0}, {1, 1}});
    auto r = hnf(a);
    CHECK(r.h == mat({{1, 1}, {0, 2}}));
    auto all = brute_hnf_2x2(a);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == r.h);
}

TEST_CASE("hnf reconstruction invariant") {
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + t % 3;
        IntMatrix a = random_matrix(n, n + t % 2, 6);
        auto r = hnf(a);
        CHECK(invert_unimodular(r.u) * r.h == a);
        CHECK(is_hnf_shape(r.h));
    }
}

TEST_CASE("snf examples") {
    auto r1 = snf(mat({{4, 0}, {0, 6}}));
    CHECK(r1.divisors == std::vector<Int>{2, 12});

    auto r0 = snf(IntMatrix(2, 3));
    CHECK(r0.s.is_zero());
    CHECK(r0.divisors.empty());

    auto r2 = snf(mat({{2, 4}, {6, 8}}));
    CHECK(r2.divisors == std::vector<Int>{2, 4});
}

TEST_CASE("snf transform identity and unimodular invariance") {
    for (int t = 0; t < 25; ++t) {
        IntMatrix a = random_matrix(3, 3, 5);
        auto r = snf(a);
        CHECK(r.u * a * r.v == r.s);
        for (std::size_t k = 0; k + 1 < r.divisors.size(); ++k)
            CHECK(r.divisors[k + 1] % r.divisors[k] == 0);
        IntMatrix l = random_unimodular(3), m = random_unimodular(3);
        auto r2 = snf(l * a * m);
        CHECK(r2.divisors == r.divisors);
    }
}

TEST_CASE("left nullspace and solve") {
    IntMatrix a = mat({{2, 4}, {1, 2}, {0, 0}});
    IntMatrix ns = left_nullspace(a);
    REQUIRE(ns.rows() == 2);
    CHECK((ns * a).is_zero());

    auto sol = solve_left(mat({{2, 0}, {0, 3}}), {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK(!solve_left(mat({{2, 0}, {0, 3}}), {1, 0}).has_value());
}

TEST_CASE("abelian group canonical form") {
    // Z^3 / <(2,0,0),(0,3,0)> = Z/2 x Z/3 x Z = Z/6 x Z in invariant factors
    auto g = AbelianGroup::from_relations(3, mat({{2, 0, 0}, {0, 3, 0}}));
    CHECK(g.rank() == 1);
    CHECK(g.torsion() == std::vector<Int>{6});
    // encode/decode round trip on canonical coordinates
    for (std::size_t k = 0; k < g.dim(); ++k) {
        auto e = g.basis(k);
        CHECK(g.encode(g.decode(e)) == e);
    }
}

TEST_CASE("hom_group examples") {
    auto z2 = AbelianGroup::free_group(2);
    auto z = AbelianGroup::free_group(1);
    HomGroup h1(z2, z);
    CHECK(h1.group().rank() == 2);
    CHECK(h1.group().torsion().empty());

    HomGroup h2(AbelianGroup::direct_sum({Int(2)}), z);
    CHECK(h2.group().dim() == 0);

    HomGroup h3(AbelianGroup::direct_sum({Int(4)}), AbelianGroup::direct_sum({Int(6)}));
    CHECK(h3.group().torsion() == std::vector<Int>{2});
    CHECK(h3.group().rank() == 0);
}

TEST_CASE("hom evaluation is additive") {
    auto a = AbelianGroup::direct_sum({Int(4), Int(0)});
    auto b = AbelianGroup::direct_sum({Int(6), Int(0)});
    HomGroup h(a, b);
    auto rand_elem = [&](const AbelianGroup& g) {
        std::uniform_int_distribution<int> d(-7, 7);
        AbelianGroup::Elem e(g.dim());
        for (auto& x : e) x = d(rng);
        return g.reduce(e);
    };
    for (int t = 0; t < 200; ++t) {
        auto f = rand_elem(h.group());
        auto g2 = rand_elem(h.group());
        auto x = rand_elem(a);
        auto lhs = h.eval(h.group().add(f, g2), x);
        auto rhs = b.add(h.eval(f, x), h.eval(g2, x));
        CHECK(lhs == rhs);
        // also additive in x
        auto y = rand_elem(a);
        CHECK(h.eval(f, a.add(x, y)) == b.add(h.eval(f, x), h.eval(f, y)));
    }
}

TEST_CASE("hom from_values round trip") {
    auto a = AbelianGroup::direct_sum({Int(4), Int(0)});
    auto b = AbelianGroup::direct_sum({Int(6), Int(0)});
    HomGroup h(a, b);
    std::uniform_int_distribution<int> d(-7, 7);
    for (int t = 0; t < 100; ++t) {
        AbelianGroup::Elem f(h.group().dim());
        for (auto& x : f) x = d(rng);
        f = h.group().reduce(f);
        std::vector<AbelianGroup::Elem> vals;
        for (std::size_t k = 0; k < a.dim(); ++k) vals.push_back(h.eval(f, a.basis(k)));
        auto back = h.from_values(vals);
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
}

TEST_CASE("submodule meet examples") {
    auto z = AbelianGroup::free_group(1);
    Submodule two(z, {{Int(2)}});
    Submodule three(z, {{Int(3)}});
    Submodule six(z, {{Int(6)}});
    CHECK(two.meet(three).equals(six));
    CHECK(two.meet(two).equals(two));

    auto z2 = AbelianGroup::free_group(2);
    Submodule x(z2, {{Int(2), Int(0)}});
    Submodule y(z2, {{Int(0), Int(3)}});
    auto m = x.meet(y);
    CHECK(m.lattice().rows() == 0);
}

TEST_CASE("submodule membership agrees with enumeration on finite ambient") {
    auto g = AbelianGroup::direct_sum({Int(4), Int(6)});
    std::uniform_int_distribution<int> d(0, 5);
    for (int t = 0; t < 20; ++t) {
        std::vector<AbelianGroup::Elem> gens;
        for (int k = 0; k < 2; ++k)
            gens.push_back(g.reduce({Int(d(rng)), Int(d(rng))}));
        Submodule s(g, gens);
        // brute force: all Z-combinations of gens over element orders
        std::set<std::vector<std::string>> members;
        auto key = [&](const AbelianGroup::Elem& e) {
            std::vector<std::string> k;
            for (auto& x : e) k.push_back(x.get_str());
            return k;
        };
        for (int c0 = 0; c0 < 12; ++c0)
            for (int c1 = 0; c1 < 12; ++c1) {
                auto e = g.add(g.scale(c0, gens[0]), g.scale(c1, gens[1]));
                members.insert(key(e));
            }
        for (const auto& e : g.enumerate(100)) {
            CHECK(s.contains(e) == (members.count(key(e)) > 0));
            if (s.contains(e)) {
                auto c = s.coords_of(e);
                REQUIRE(c.has_value());
                auto rebuilt = g.zero();
                for (std::size_t i = 0; i < gens.size(); ++i)
                    rebuilt = g.add(rebuilt, g.scale((*c)[i], gens[i]));
                CHECK(rebuilt == e);
            }
        }
    }
}

TEST_CASE("choose_m2 pinned examples") {
    auto z = AbelianGroup::free_group(1);
    CHECK(choose_m2(z, Submodule(z, {{Int(2)}}), 3) == 6);

    auto z2 = AbelianGroup::free_group(2);
    CHECK(choose_m2(z2, Submodule(z2, {{Int(1), Int(0)}}), 3) == 3);
    CHECK(choose_m2(z2, Submodule(z2, {{Int(2), Int(0)}}), 3) == 6);
}

TEST_CASE("choose_m2 postcondition on random submodules") {
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 30; ++t) {
        auto h = AbelianGroup::direct_sum({Int(t % 2 ? 4 : 9), Int(0), Int(0)});
        std::vector<AbelianGroup::Elem> gens;
        for (int k = 0; k < 2; ++k)
            gens.push_back(h.reduce({Int(d(rng)), Int(d(rng)), Int(d(rng))}));
        Submodule w(h, gens);
        Int m1 = 1 + t % 5;
        Int m2 = choose_m2(h, w, m1);  // throws if its own check fails
        CHECK(m2 % m1 == 0);
    }
}

TEST_CASE("quotient projection") {
    auto z2 = AbelianGroup::free_group(2);
    Submodule s(z2, {{Int(2), Int(0)}, {Int(0), Int(3)}});
    auto q = s.quotient();
    CHECK(q.group.order() == 6);
    CHECK(q.group.is_zero(q.project(z2, {Int(2), Int(3)})));
    CHECK(!q.group.is_zero(q.project(z2, {Int(1), Int(0)})));
    CHECK(s.index() == 6);
}
