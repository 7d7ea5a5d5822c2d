#include "catch_amalgamated.hpp"

#include "hopfcalc/registry.hpp"

using namespace hopfcalc;

namespace {

std::string failures(const CheckReport& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (c.status == Status::fail) s += c.name + " at " + c.witness + "; ";
    return s;
}

const RadfordInstance& radford22() {
    static const auto I = radford_instance(2, 2, 1, "zero");
    return *I;
}

const TorusInstance& torus8() {
    static const auto I = torus_instance(8, 1, 3, 3);
    return *I;
}

const VerticalData& radford_vd() {
    static const VerticalData vd = vertical_map(radford22().cf);
    return vd;
}

const VerticalData& torus_vd() {
    static const VerticalData vd = vertical_map(torus8().cf, 2);
    return vd;
}

} // namespace

TEST_CASE("left-coinvariant forms and the Maurer-Cartan form", "[qpb]") {
    const auto K = build_cyclic_group_algebra(2);
    const auto W = woronowicz_from_ideal(K, {});
    const auto co = coinvariant_forms(W.fodc);
    INFO(failures(co.report));
    CHECK(co.report.ok());
    REQUIRE(co.dim() == 1);
    const Vec mc1 = co.maurer_cartan(grp(1));
    // S(ā)dā with S(ā) = ā.
    CHECK(mc1 == W.fodc.lmul(Vec(grp(1)), W.fodc.d(grp(1))));
    CHECK(hopfcalc::apply(*W.fodc.lambda, mc1) == tensor(Vec(grp(0)), mc1));
    CHECK(co.maurer_cartan(grp(0)).is_zero());
    CHECK(co.span.contains(mc1));

    const auto L = build_laurent_q_calculus(root_of_unity(8, 3));
    const auto cl = coinvariant_forms(L, 3);
    REQUIRE(cl.dim() == 1);
    CHECK(cl.span.contains(Vec(tdt("t", -1))));
    CHECK(cl.report.find("maurer-cartan-surjective")->status == Status::window_verified);
    CHECK(cl.maurer_cartan(tpow(1)) == Vec(tdt("t", -1)));
    CHECK_THROWS_AS(cl.coords(Vec(tdt("t", 0))), StructureError);
}

TEST_CASE("vertical map on the torus", "[qpb]") {
    const auto& vd = torus_vd();
    INFO(failures(vd.report));
    CHECK(vd.report.ok());
    REQUIRE(vd.co.keys.size() == 1);
    const Index key = vd.co.keys[0];
    CHECK(vd.co.form(key) == Vec(tdt("t", -1)));
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n)
            CHECK(vd.ver(ver(wpow(m), tdt("t", n))) == Vec(vpair(pair(wpow(m), tpow(n + 1)), key)));
}

TEST_CASE("Atiyah sequence is exact", "[qpb][acceptance]") {
    const auto& vd = radford_vd();
    INFO(failures(vd.report));
    CHECK(vd.report.ok());
    CHECK(vd.target_basis(0).size() == 8);
    const auto hf = radford_higher_forms(radford22());
    const auto rep = check_atiyah_exact(vd, &hf, 2);
    INFO(failures(rep));
    CHECK(rep.ok());
    for (const auto& c : rep.checks) CHECK(c.status == Status::pass);
    CHECK(rep.find("ver02-kernel"));
    std::size_t nHor = 0, nVer = 0;
    for (const auto& w : vd.fodc().forms(0)) (is_hor(w) ? nHor : nVer)++;
    CHECK(nVer == vd.target_basis(0).size());
    CHECK(rep.find("kernel-is-horizontal")->detail.find("dim hor " + std::to_string(nHor)) != std::string::npos);

    const auto& tvd = torus_vd();
    const auto thf = torus_higher_forms(torus8(), 2);
    const auto trep = check_atiyah_exact(tvd, &thf, 2, 2);
    INFO(failures(trep));
    CHECK(trep.ok());
    CHECK(trep.find("kernel-is-horizontal")->status == Status::window_verified);
}

TEST_CASE("canonical connection is strong", "[qpb][acceptance]") {
    for (const VerticalData* vd : {&radford_vd(), &torus_vd()}) {
        const auto conn = canonical_connection(*vd, vd->fodc().finite() ? kDefaultWindow : 2);
        INFO(failures(conn.report));
        CHECK(conn.report.ok());
        CHECK(conn.report.passed("strong"));
        CHECK(conn.report.passed("ver-after-c"));
    }
    const auto& vd = radford_vd();
    const Index one = pair(ax(0, 0), grp(0));
    for (const auto& k : vd.co.keys) CHECK(vd.g(vpair(one, k)) == verv(Vec(ax(0, 0)), vd.co.form(k)));
    LinFn zero = [](const Index&) { return Vec(); };
    CHECK_FALSE(check_connection(vd, zero).passed("ver-after-c"));
}

TEST_CASE("covariant derivative on an associated bundle", "[qpb]") {
    const auto cd = covariant_derivative(radford_vd(), radford_test_comodule(2));
    INFO(failures(cd.report));
    CHECK(cd.report.ok());
    CHECK(cd.e_basis.size() == 8);
    for (const char* name : {"nabla-formula", "left-leibniz", "right-leibniz", "sigma-bimodule", "sigma-unique"})
        CHECK(cd.report.passed(name));
}

TEST_CASE("quantum tangent space and fundamental vector fields", "[qpb]") {
    const auto& vd = radford_vd();
    const auto ts = tangent_and_fields(vd);
    INFO(failures(ts.report));
    CHECK(ts.report.ok());
    REQUIRE(ts.basis.size() == vd.co.dim());
    const Index oneB = ax(0, 0), oneA = pair(ax(0, 0), grp(0));
    for (const auto& x : ts.basis)
        for (const auto& k : vd.co.keys) {
            const Vec applied = hopfcalc::apply(ts.fields.at(x), verv(Vec(oneB), vd.co.form(k)));
            CHECK(applied == (x.sub(0) == k.sub(0) ? Vec(oneA) : Vec()));
        }
    CHECK_THROWS_WITH(tangent_and_fields(torus_vd(), 2), Catch::Matchers::ContainsSubstring("finite-dimensional"));
}

TEST_CASE("connections and connection 1-forms correspond", "[qpb][acceptance]") {
    const auto& vd = radford_vd();
    const auto ts = tangent_and_fields(vd);
    const auto conn = canonical_connection(vd);
    const auto there = connection_form_bijection(vd, ts, conn.c);
    INFO(failures(there.report));
    CHECK(there.report.ok());
    CHECK(there.report.passed("roundtrip-connection"));
    for (const auto& x : ts.basis) CHECK(there.phi.coeffs.at(x) == verv(Vec(ax(0, 0)), vd.co.form(xkey(x.sub(0)))));
    const auto back = connection_form_bijection(vd, ts, there.phi);
    INFO(failures(back.report));
    CHECK(back.report.ok());
    CHECK(back.report.passed("roundtrip-form"));

    LinFn zero = [](const Index&) { return Vec(); };
    CHECK_THROWS_WITH(connection_form_bijection(vd, ts, zero), Catch::Matchers::StartsWith("not a connection"));
    ConnectionForm bad;
    for (const auto& x : ts.basis) bad.coeffs[x] = Vec();
    CHECK_THROWS_WITH(connection_form_bijection(vd, ts, bad), Catch::Matchers::StartsWith("not a connection 1-form"));
}
