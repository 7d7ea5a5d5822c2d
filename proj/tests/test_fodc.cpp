#include "catch_amalgamated.hpp"

#include "hopfcalc/fodc.hpp"

using namespace hopfcalc;

namespace {

Index g(std::int64_t i) { return idx("g", {i}); }

std::string failures(const CheckReport& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (c.status == Status::fail) s += c.name + " at " + c.witness + "; ";
    return s;
}

struct H1Data {
    Radford R;
    HopfPtr K;
    Measure measure;
    Cocycle cocycle;
};

H1Data h1_data() {
    H1Data D;
    const Cyc q = root_of_unity(4, 1);
    D.R = build_radford(2, 2, q);
    D.K = build_cyclic_group_algebra(2);
    D.measure = [q](const Index& h, const Index& b) { return Vec(b, q.pow(-b.num(1) * h.num(0))); };
    BilFn s = [](const Index& h, const Index& k) { return h.num(0) + k.num(0) < 2 ? Vec(ax(0, 0)) : Vec(ax(2, 0)); };
    D.cocycle = Cocycle{s, cocycle_inverse(s, *D.K, *D.R.H1)};
    return D;
}

} // namespace

TEST_CASE("Woronowicz calculus on kC2 from the zero ideal", "[fodc]") {
    const auto K = build_cyclic_group_algebra(2);
    const auto W = woronowicz_from_ideal(K, {});
    REQUIRE(W.reps.size() == 1);
    CHECK(W.reps[0] == g(1));
    CHECK(W.bicovariant);
    const Fodc& f = W.fodc;
    CHECK(f.forms().size() == 2);
    const auto rep = check_fodc(f);
    INFO(failures(rep));
    CHECK(rep.ok());
    CHECK(f.d(g(1)) == Vec(wor(g(1), g(1))));
    CHECK(f.d(g(0)).is_zero());
    for (const auto& h : K->A().basis()) CHECK((*f.lambda)(wor(g(1), h)) == Vec(pair(h, wor(g(1), h))));
    // d(e·1 + f·ā) = f·dā, so ker d = k·1.
    const auto ki = kernel_image(f.d, K->A().basis());
    CHECK(ki.kernel.dim() == 1);
    CHECK(ki.kernel.contains(Vec(g(0))));
}

TEST_CASE("the augmentation ideal gives the zero calculus", "[fodc]") {
    const auto K = build_cyclic_group_algebra(2);
    const auto W = woronowicz_from_ideal(K, {Vec(g(1)) - Vec(g(0))});
    CHECK(W.fodc.forms().empty());
    CHECK(W.fodc.d(g(1)).is_zero());
    CHECK(check_fodc(W.fodc).ok());
    CHECK_THROWS_AS(woronowicz_from_ideal(K, {Vec(g(1))}), StructureError);
}

TEST_CASE("a corrupted right action is caught", "[fodc][mutation]") {
    const auto K = build_cyclic_group_algebra(3);
    Fodc f = woronowicz_from_ideal(K, {}).fodc;
    const BilFn right = f.right;
    f.right = [right](const Index& w, const Index& a) { return a == g(1) ? Cyc(2) * right(w, a) : right(w, a); };
    const auto rep = check_fodc(f);
    CHECK_FALSE(rep.ok());
    const CheckEntry* e = rep.find("right-module");
    REQUIRE(e);
    CHECK(e->status == Status::fail);
    CHECK(std::count(e->witness.begin(), e->witness.end(), ',') >= 2);
}

TEST_CASE("q-calculus on Laurent polynomials", "[fodc]") {
    const Cyc q = root_of_unity(8, 3);
    const Fodc f = build_laurent_q_calculus(q);
    CHECK(f.d(tpow(2)) == Vec(tdt("t", 1), Cyc(1) + q));
    CHECK(f.d(tpow(1)) == Vec(tdt("t", 0)));
    CHECK(f.d(tpow(0)).is_zero());
    CHECK(f.d(tpow(-1)) == Vec(tdt("t", -2), -q.inverse()));
    // d(t²) from Leibniz on t·t with dt·t = q t dt.
    CHECK(f.d(tpow(2)) == f.lmul(Vec(tpow(1)), f.d(tpow(1))) + f.rmul(f.d(tpow(1)), Vec(tpow(1))));
    CHECK((*f.rho)(tdt("t", 3)) == Vec(pair(tdt("t", 3), tpow(4))));
    CHECK((*f.lambda)(tdt("t", 3)) == Vec(pair(tpow(4), tdt("t", 3))));
    const auto rep = check_fodc(f, 3);
    INFO(failures(rep));
    CHECK(rep.ok());
    CHECK(rep.find("leibniz")->status == Status::window_verified);
    CHECK_THROWS_AS(build_laurent_q_calculus(Cyc(1)), StructureError);
    CHECK_THROWS_AS(build_laurent_q_calculus(Cyc(-1)), StructureError);
    CHECK_THROWS_AS(build_laurent_q_calculus(Cyc(0)), StructureError);
}

TEST_CASE("universal calculi", "[fodc]") {
    const auto K = build_cyclic_group_algebra(2);
    const Fodc u = universal_fodc(K->alg);
    CHECK(u.forms().size() == 2);
    CHECK(u.d(g(0)).is_zero());
    CHECK(check_fodc(u).ok());
    const auto D = h1_data();
    const Fodc uh = universal_fodc(D.R.H1);
    CHECK(uh.forms().size() == 12);
    CHECK(check_fodc(uh).ok());
    const Fodc trivial = universal_fodc(build_cyclic_group_algebra(1)->alg);
    CHECK(trivial.forms().empty());
    CHECK_THROWS_AS(universal_fodc(build_laurent_algebra("t")), StructureError);
}

TEST_CASE("twisted module calculi on H1 require d(a^r) = 0", "[fodc]") {
    const auto D = h1_data();
    const Fodc u = universal_fodc(D.R.H1);
    const Fodc quotient = quotient_fodc(u, {u.d(ax(2, 0))}, "H1calc");
    CHECK(quotient.d(ax(2, 0)).is_zero());
    CHECK_FALSE(quotient.d(ax(0, 1)).is_zero());
    CHECK(check_fodc(quotient).ok());
    const auto good = check_sigma_twisted_module_calculus(quotient, D.K, D.measure, D.cocycle);
    INFO(failures(good.report));
    CHECK(good.report.ok());
    const auto bad = check_sigma_twisted_module_calculus(u, D.K, D.measure, D.cocycle);
    CHECK_FALSE(bad.report.passed("dsigma"));
    CHECK(bad.report.find("dsigma")->witness.find(g(1).str()) != std::string::npos);
    const auto zero = check_sigma_twisted_module_calculus(zero_fodc(D.R.H1), D.K, D.measure, D.cocycle);
    CHECK(zero.report.ok());
}

TEST_CASE("torus cocycle forces the zero calculus on the base", "[fodc]") {
    const int W = 4;
    const Cyc z = root_of_unity(8, 1);
    const Torus T = build_torus_comodule(z);
    CleftData cd;
    cd.total = T.A;
    cd.coinv = T.B;
    cd.j = [](const Index& t) { return t.num(0) >= 0 ? Vec(uv(t.num(0), 0)) : Vec(uv(0, -t.num(0))); };
    cd.inverse_support = [](const Index& t) {
        const int k = static_cast<int>(std::abs(t.num(0))) + 1;
        std::vector<Index> b;
        for (int i = -k; i <= k; ++i)
            for (int j = -k; j <= k; ++j) b.push_back(uv(i, j));
        return b;
    };
    const auto cp = cleft_to_crossed(cd, W).cp;
    const auto forced = forced_zero_calculus(cp.base, cp.hopf, cp.cocycle, W);
    INFO(failures(forced));
    CHECK(forced.ok());
    for (int l = -W; l <= W; ++l) CHECK(forced.checks[0].detail.find(wpow(l).str()) != std::string::npos);

    const Fodc qw = laurent_q_calculus(root_of_unity(8, 3), "w");
    CHECK_FALSE(qw.d(wpow(1)).is_zero());
    const auto tw = check_sigma_twisted_module_calculus(qw, cp.hopf, cp.measure, cp.cocycle, 2);
    CHECK_FALSE(tw.report.passed("dsigma"));
    const auto zero = check_sigma_twisted_module_calculus(zero_fodc(cp.base), cp.hopf, cp.measure, cp.cocycle, 2);
    CHECK(zero.report.ok());
}

TEST_CASE("forced zero is not automatic for a cocycle with few values", "[fodc]") {
    const auto D = h1_data();
    const auto rep = forced_zero_calculus(D.R.H1, D.K, D.cocycle);
    CHECK_FALSE(rep.ok());
    CHECK(rep.checks[0].detail.find(ax(2, 0).str()) != std::string::npos);
}
