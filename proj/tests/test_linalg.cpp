#include "catch_amalgamated.hpp"

#include "hopfcalc/linalg.hpp"

#include <random>

using namespace hopfcalc;

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

// Fraction-free (Bareiss) rank of an integer matrix; independent of the sparse field elimination.
std::size_t bareiss_rank(Dense a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                mpz_class v = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

Dense random_low_rank(std::mt19937& rng, std::size_t m, std::size_t n, std::size_t k) {
    Dense L(m, std::vector<mpz_class>(k)), R(k, std::vector<mpz_class>(n)), out(m, std::vector<mpz_class>(n, 0));
    for (auto& row : L)
        for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    for (auto& row : R)
        for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < k; ++t) out[i][j] += L[i][t] * R[t][j];
    return out;
}

Index e(std::int64_t i) { return idx("e", {i}); }
Index f(std::int64_t i) { return idx("f", {i}); }

// Column j of the matrix is the image of e(j).
LinFn as_map(const Dense& a) {
    return [a](const Index& x) {
        Vec v;
        for (std::size_t i = 0; i < a.size(); ++i) v.add(f(static_cast<std::int64_t>(i)), Cyc(mpq_class(a[i][static_cast<std::size_t>(x.num(0))])));
        return v;
    };
}

std::vector<Index> domain(std::size_t n) {
    std::vector<Index> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(e(static_cast<std::int64_t>(j)));
    return d;
}

} // namespace

TEST_CASE("sparse vectors cancel and tensor bilinearly", "[linalg]") {
    Vec v(e(0), Cyc(2));
    v.add(e(0), Cyc(-2));
    CHECK(v.is_zero());
    CHECK(v.size() == 0);
    const Vec a = Vec(e(0)) + Vec(e(1), Cyc(3));
    const Vec b = Vec(f(0), Cyc(-1));
    const Vec t = tensor(a, b);
    CHECK(t.size() == 2);
    CHECK(t.coeff(pair(e(1), f(0))) == Cyc(-3));
    CHECK((Cyc(0) * a).is_zero());
    CHECK(tensor(a + a, b) == Cyc(2) * t);
}

TEST_CASE("indices order deterministically", "[linalg]") {
    CHECK(compare(idx("a", {1}), idx("a", {2})) < 0);
    CHECK(compare(idx("a", {2}), idx("a", {2})) == 0);
    CHECK(compare(pair(e(0), f(1)), pair(e(0), f(2))) < 0);
    CHECK(pair(e(1), f(2)).str() == pair(e(1), f(2)).str());
}

TEST_CASE("identity and zero maps", "[linalg]") {
    const auto D = domain(3);
    auto ki = kernel_image(identity_map(), D);
    CHECK(ki.kernel.dim() == 0);
    CHECK(ki.image.dim() == 3);
    LinFn zero = [](const Index&) { return Vec(); };
    auto kz = kernel_image(zero, D);
    CHECK(kz.kernel.dim() == 3);
    CHECK(kz.image.dim() == 0);
    const Vec target = Vec(e(0)) + Vec(e(2), Cyc(5));
    auto x = solve_linear(identity_map(), target, D);
    REQUIRE(x);
    CHECK(*x == target);
    CHECK_FALSE(solve_linear(zero, Vec(e(1)), D));
    CHECK(solve_linear(zero, Vec(), D).has_value());
}

TEST_CASE("rank agrees with fraction-free elimination", "[linalg][property]") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7, k = rng() % 5;
        const Dense a = random_low_rank(rng, m, n, k);
        const auto D = domain(n);
        const auto ki = kernel_image(as_map(a), D);
        const std::size_t oracle = bareiss_rank(a);
        CHECK(ki.image.dim() == oracle);
        CHECK(ki.kernel.dim() + ki.image.dim() == n);
        for (const auto& kv : ki.kernel.basis()) CHECK(hopfcalc::apply(as_map(a), kv).is_zero());
    }
}

TEST_CASE("solutions satisfy the system and exist exactly on the image", "[linalg][property]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        const Dense a = random_low_rank(rng, m, n, rng() % 4);
        const auto F = as_map(a);
        const auto D = domain(n);
        LinearSolver solver(F, D);
        Dense aug = a;
        Vec target;
        for (std::size_t i = 0; i < m; ++i) {
            const long c = static_cast<long>(rng() % 5) - 2;
            aug[i].push_back(c);
            target.add(f(static_cast<std::int64_t>(i)), Cyc(c));
        }
        const bool solvable = bareiss_rank(aug) == bareiss_rank(a);
        auto x = solver.solve(target);
        CHECK(x.has_value() == solvable);
        CHECK(solver.obstruction(target).has_value() == !solvable);
        if (x) CHECK(hopfcalc::apply(F, *x) == target);
    }
}

TEST_CASE("subspaces stay in reduced echelon form", "[linalg][property]") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Subspace s;
        std::vector<Vec> gens;
        for (int g = 0; g < 5; ++g) {
            Vec v;
            for (int t = 0; t < 3; ++t) v.add(e(static_cast<std::int64_t>(rng() % 6)), Cyc(static_cast<long>(rng() % 5) - 2));
            gens.push_back(v);
            s.insert(v);
        }
        for (const auto& v : gens) CHECK(s.contains(v));
        for (const auto& [piv, row] : s.rows()) {
            CHECK(row.leading() == piv);
            CHECK(row.coeff(piv) == Cyc(1));
            for (const auto& [p2, r2] : s.rows())
                if (p2 != piv) CHECK(row.coeff(p2).is_zero());
        }
        for (const auto& v : gens) CHECK(s.combine(s.coordinates(v)) == v);
        CHECK(intersection_dim(s, s) == s.dim());
    }
}

TEST_CASE("quotient bases", "[linalg]") {
    const auto D = domain(4);
    auto q0 = quotient_basis(D, Subspace());
    CHECK(q0.representatives == D);
    Subspace all;
    for (const auto& i : D) all.insert(Vec(i));
    CHECK(quotient_basis(D, all).representatives.empty());
    Subspace line({Vec(e(0)) - Vec(e(1))});
    auto q1 = quotient_basis(D, line);
    CHECK(q1.representatives.size() == 3);
    CHECK(q1.project(Vec(e(0))) == q1.project(Vec(e(1))));
    CHECK_THROWS_AS(quotient_basis(domain(2), Subspace({Vec(e(3))})), LinAlgError);
}

TEST_CASE("matrices over cyclotomic entries", "[linalg]") {
    const Cyc z = root_of_unity(3, 1);
    LinFn F = [z](const Index& x) {
        return x.num(0) == 0 ? Vec(f(0)) + Vec(f(1), z) : Vec(f(0), z) + Vec(f(1), z * z);
    };
    CHECK(rank(F, domain(2)) == 1);
    LinFn G = [z](const Index& x) { return x.num(0) == 0 ? Vec(f(0)) + Vec(f(1), z) : Vec(f(0), z) + Vec(f(1)); };
    CHECK(rank(G, domain(2)) == 2);
    auto m = matrix_strings(F, domain(2), {f(0), f(1)});
    CHECK(m[1][0] == z.str());
}
