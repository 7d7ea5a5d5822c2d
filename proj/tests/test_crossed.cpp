#include "catch_amalgamated.hpp"

#include "hopfcalc/crossed.hpp"

using namespace hopfcalc;

namespace {

Index g(std::int64_t i) { return idx("g", {i}); }

std::string failures(const CheckReport& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (c.status == Status::fail) s += c.name + " at " + c.witness + "; ";
    return s;
}

// H1 ⊂ H(r,n,q) with the conjugation measure and the coset cocycle of C_r.
struct RadfordData {
    int r, n;
    Cyc q;
    Radford R;
    HopfPtr K;
    Measure measure;
    Cocycle cocycle;
};

RadfordData radford_data(int r, int n, int qi) {
    RadfordData D{r, n, root_of_unity(r * n, qi), {}, {}, {}, {}};
    D.R = build_radford(r, n, D.q);
    D.K = build_cyclic_group_algebra(r);
    const Cyc q = D.q;
    D.measure = [q](const Index& h, const Index& b) { return Vec(b, q.pow(-b.num(1) * h.num(0))); };
    BilFn s = [r](const Index& h, const Index& k) { return h.num(0) + k.num(0) < r ? Vec(ax(0, 0)) : Vec(ax(r, 0)); };
    D.cocycle = Cocycle{s, cocycle_inverse(s, *D.K, *D.R.H1)};
    return D;
}

CleftData torus_cleft(const Torus& T) {
    CleftData cd;
    cd.total = T.A;
    cd.coinv = T.B;
    cd.j = [](const Index& t) {
        const auto k = t.num(0);
        return k >= 0 ? Vec(uv(k, 0)) : Vec(uv(0, -k));
    };
    cd.inverse_support = [](const Index& t) {
        const int k = static_cast<int>(std::abs(t.num(0))) + 1;
        std::vector<Index> b;
        for (int i = -k; i <= k; ++i)
            for (int j = -k; j <= k; ++j) b.push_back(uv(i, j));
        return b;
    };
    return cd;
}

// The four closed forms of σ on t^a⊗t^b as elements of the torus, with z = e^{iθ}.
Vec torus_sigma_oracle(const Cyc& z, std::int64_t a, std::int64_t b) {
    if ((a >= 0 && b >= 0) || (a <= 0 && b <= 0)) return Vec(uv(0, 0));
    if (a > 0) {
        const std::int64_t k = a, s = -b;
        return s <= k ? Vec(uv(s, s), z.pow(-s * (k - s))) : Vec(uv(k, k));
    }
    const std::int64_t k = -a, s = b;
    return k <= s ? Vec(uv(k, k), z.pow(k * k)) : Vec(uv(s, s), z.pow(s * k));
}

} // namespace

TEST_CASE("Radford twisted module data passes every condition", "[crossed]") {
    for (auto [r, n, qi] : {std::tuple{2, 2, 1}, std::tuple{3, 2, 1}, std::tuple{2, 3, 5}}) {
        const auto D = radford_data(r, n, qi);
        const auto rep = check_twisted_module_algebra(*D.R.H1, *D.K, D.measure, D.cocycle);
        INFO(failures(rep));
        CHECK(rep.ok());
        CHECK(rep.checks.size() == 7);
    }
}

TEST_CASE("Radford crossed product multiplication", "[crossed]") {
    const auto D = radford_data(2, 2, 1);
    const auto cp = build_crossed_product(D.R.H1, D.K, D.measure, D.cocycle);
    const Algebra& A = cp.A();
    CHECK(A.basis().size() == 8);
    const Vec one(ax(0, 0));
    CHECK(A.mul(pair(ax(0, 0), g(1)), pair(ax(0, 0), g(1))) == Vec(pair(ax(2, 0), g(0))));
    CHECK(A.mul(pair(ax(0, 0), g(1)), pair(ax(0, 1), g(0))) == Vec(pair(ax(0, 1), g(1)), D.q.pow(-1)));
    for (const auto& x : A.basis()) {
        CHECK(A.mul(Vec(x), A.unit) == Vec(x));
        CHECK(A.mul(A.unit, Vec(x)) == Vec(x));
    }
    const auto rep = check_algebra(A);
    CHECK(rep.ok());
    const auto coinv = finite_coinvariants(*cp.comodule);
    CHECK(coinv.base->basis().size() == 4);
}

TEST_CASE("trivial cocycle gives the smash product", "[crossed]") {
    const Cyc z = root_of_unity(8, 1);
    auto B = build_laurent_algebra("s");
    auto H = build_laurent_hopf("t");
    Measure m = [z](const Index& t, const Index& s) { return Vec(s, z.pow(t.num(0) * s.num(0))); };
    const auto rep = check_twisted_module_algebra(*B, *H, m, trivial_cocycle(*H, *B), 3);
    CHECK(rep.ok());
    const auto cp = build_crossed_product(B, H, m, trivial_cocycle(*H, *B), 3);
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -1; d <= 1; ++d) {
                    const Vec got = cp.A().mul(pair(idx("s", {a}), tpow(b)), pair(idx("s", {c}), tpow(d)));
                    CHECK(got == Vec(pair(idx("s", {a + c}), tpow(b + d)), z.pow(b * c)));
                }
}

TEST_CASE("a cocycle incompatible with the measure is rejected", "[crossed][mutation]") {
    const auto D = radford_data(2, 2, 1);
    const Cocycle trivial = trivial_cocycle(*D.K, *D.R.H1);
    const auto rep = check_twisted_module_algebra(*D.R.H1, *D.K, D.measure, trivial);
    CHECK_FALSE(rep.passed("twisted-module"));
    CHECK_THROWS_WITH(build_crossed_product(D.R.H1, D.K, D.measure, trivial),
                      Catch::Matchers::ContainsSubstring("twisted-module"));
    BilFn zero = [](const Index&, const Index&) { return Vec(); };
    CHECK_THROWS_AS(cocycle_inverse(zero, *D.K, *D.R.H1), StructureError);
}

TEST_CASE("cleaving inverse of a crossed product", "[crossed]") {
    const auto D = radford_data(2, 2, 1);
    const auto cp = build_crossed_product(D.R.H1, D.K, D.measure, D.cocycle);
    const auto cd = canonical_cleft(cp);
    const auto solved = convolution_inverse(cd.j, cp.H().coalgebra(), cp.H().A().basis(), cp.A(), cp.A().basis());
    REQUIRE(solved.ok);
    for (const auto& h : cp.H().A().basis()) {
        CHECK(crossed_cleaving_inverse(cp, h) == solved.table.at(h));
        CHECK(cp.A().mul(cd.j(h), crossed_cleaving_inverse(cp, h)) == cp.A().unit);
    }
    const auto back = cleft_to_crossed(cd);
    INFO(failures(back.report));
    CHECK(back.report.ok());
    for (const auto& h : cp.H().A().basis()) {
        for (const auto& b : cp.B().basis()) CHECK(back.cp.act(Vec(h), Vec(b)) == cp.act(Vec(h), Vec(b)));
        for (const auto& k : cp.H().A().basis()) CHECK(back.cp.sigma(Vec(h), Vec(k)) == cp.sigma(Vec(h), Vec(k)));
    }
}

TEST_CASE("Hopf-Galois canonical map", "[crossed]") {
    const auto D = radford_data(2, 2, 1);
    const auto cp = build_crossed_product(D.R.H1, D.K, D.measure, D.cocycle);
    const auto rep = check_hopf_galois(*cp.comodule, finite_coinvariants(*cp.comodule));
    CHECK(rep.ok());
    CHECK(hopf_galois_rank(rep) == 16);

    const auto K = build_cyclic_group_algebra(2);
    ComoduleAlgebra regular{K->alg, K, K->comul};
    const auto reg = check_hopf_galois(regular, finite_coinvariants(regular));
    CHECK(reg.ok());
    CHECK(hopf_galois_rank(reg) == 4);

    ComoduleAlgebra trivial{K->alg, K, [](const Index& a) { return Vec(pair(a, g(0))); }};
    const auto triv = check_hopf_galois(trivial, finite_coinvariants(trivial));
    CHECK(triv.passed("can-injective"));
    CHECK_FALSE(triv.passed("can-surjective"));
    CHECK(hopf_galois_rank(triv) == 2);
}

TEST_CASE("torus cleft extension yields the closed-form measure and cocycle", "[crossed]") {
    const int W = 4;
    const Cyc z = root_of_unity(8, 1);
    const Torus T = build_torus_comodule(z);
    const auto res = cleft_to_crossed(torus_cleft(T), W);
    INFO(failures(res.report));
    CHECK(res.report.ok());
    const auto& cp = res.cp;
    for (int k = -W; k <= W; ++k) {
        CHECK(res.j_inv(tpow(k)) == (k >= 0 ? Vec(uv(-k, 0)) : Vec(uv(0, k))));
        for (int l = -W; l <= W; ++l) CHECK(cp.act(Vec(tpow(k)), Vec(wpow(l))) == Vec(wpow(l), z.pow(-k * l)));
        for (int s = -W; s <= W; ++s) {
            const auto expected = T.B.project(torus_sigma_oracle(z, k, s));
            REQUIRE(expected);
            CHECK(cp.sigma(Vec(tpow(k)), Vec(tpow(s))) == *expected);
        }
    }
    CHECK(cp.sigma(Vec(tpow(1)), Vec(tpow(-1))) == Vec(wpow(1)));
    const auto twisted = check_twisted_module_algebra(cp.B(), cp.H(), cp.measure, cp.cocycle, 2);
    CHECK(twisted.ok());
    for (const auto& c : twisted.checks) CHECK(c.status == Status::window_verified);
}

TEST_CASE("non-coinvariant values are reported", "[crossed]") {
    const Torus T = build_torus_comodule(root_of_unity(8, 1));
    CHECK_THROWS_WITH(into_base(T.B, Vec(uv(1, 0)), "probe"), Catch::Matchers::ContainsSubstring("probe is not coinvariant"));
}
