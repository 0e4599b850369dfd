#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "bbsolver.hpp"
#include "certcheck.hpp"
#include "doctest.h"
#include "modelgen.hpp"

using namespace chvip;

namespace {

// Hand-written one-step Chvatal-Gomory certificate: max x, x binary,
// x <= 1/2 rounds to x <= 0.
const char* kRoundingCert =
    "CERT 1\n"
    "VARS 1\n"
    "x bin 0 1\n"
    "OBJ max 1 0 1\n"
    "CONS 1\n"
    "half L 1/2 1 0 1\n"
    "RTP range 0 0\n"
    "SOLS 1\n"
    "0\n"
    "DERS 1\n"
    "cut L 0 1 0 1 rnd 1 C0 1\n";

std::string solver_cert_text(const Model& m) {
    SolveResult res = solve_ip(m);
    REQUIRE(res.certificate);
    return serialize_certificate(*res.certificate);
}

}  // namespace

TEST_CASE("bare problem files parse and stop after CONS") {
    std::string text = emit(build_opt(1), EmitFormat::CertProblem);
    Certificate c = parse_certificate(text);
    CHECK(c.vars.size() == 3);  // x_1, y_1, z
    CHECK(c.vars[2].name == "z");
    CHECK(c.vars[2].kind == VarKind::NonnegInteger);
    CHECK(!c.goal);
    CHECK(c.derivations.empty());
}

TEST_CASE("hand-written rounding certificate verifies") {
    Certificate c = parse_certificate(kRoundingCert);
    CheckVerdict v = check_certificate(c);
    CHECK_MESSAGE(v.ok, v.reason);
}

TEST_CASE("distinct parse diagnostics") {
    // wrong CONS count
    CHECK_THROWS_WITH_AS(parse_certificate("CERT 1\nVARS 1\nx bin 0 1\nOBJ max 0\nCONS 2\nr L 0 1 0 1\n"),
                         doctest::Contains("CONS"), CertParseError);
    // non-reduced rational
    CHECK_THROWS_WITH_AS(parse_certificate("CERT 1\nVARS 1\nx bin 0 2/4\nOBJ max 0\nCONS 0\n"),
                         doctest::Contains("non-canonical"), CertParseError);
    // duplicate variable name
    CHECK_THROWS_WITH_AS(parse_certificate("CERT 1\nVARS 2\nx bin 0 1\nx bin 0 1\nOBJ max 0\nCONS 0\n"),
                         doctest::Contains("duplicate variable"), CertParseError);
    // index out of range
    CHECK_THROWS_WITH_AS(parse_certificate("CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 3 1\nCONS 0\n"),
                         doctest::Contains("out of range"), CertParseError);
    // missing header
    CHECK_THROWS_AS(parse_certificate("VARS 0\n"), CertParseError);
    // forward derivation reference
    CHECK_THROWS_WITH_AS(parse_certificate("CERT 1\nVARS 1\nx bin 0 1\nOBJ max 0\nCONS 0\nRTP infeas\nSOLS 0\nDERS 1\nd L -1 0 lin 1 D0 1\n"),
                         doctest::Contains("out of range"), CertParseError);
    // comments and the error line number
    try {
        parse_certificate("# leading comment\nCERT 1\nVARS 1\nx bin 0 bad\nOBJ max 0\nCONS 0\n");
        FAIL("expected parse error");
    } catch (const CertParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("checker refutes broken certificates") {
    auto refused = [](const std::string& text, const char* why) {
        Certificate c = parse_certificate(text);
        CheckVerdict v = check_certificate(c);
        CHECK_MESSAGE(!v.ok, "expected refutation: " << why);
        return v.reason;
    };
    // stated rhs stronger than the aggregation supports
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nhalf L 1/2 1 0 1\n"
        "RTP range 0 0\nSOLS 1\n0\nDERS 1\ncut L -1 1 0 1 rnd 1 C0 1\n",
        "rhs below the floor");
    // wrong multiplier sign on a <= row
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nhalf L 1/2 1 0 1\n"
        "RTP range 0 0\nSOLS 1\n0\nDERS 1\ncut L 0 1 0 1 rnd 1 C0 -1\n",
        "negative multiplier on <= row");
    // infeasible solution listed
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nhalf L 1/2 1 0 1\n"
        "RTP range 0 0\nSOLS 1\n1 0 1\nDERS 1\ncut L 0 1 0 1 rnd 1 C0 1\n",
        "solution violates the row");
    // goal upper bound not derived
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nhalf L 1/2 1 0 1\n"
        "RTP range 0 -1\nSOLS 1\n0\nDERS 1\ncut L 0 1 0 1 rnd 1 C0 1\n",
        "stated ub below the derivation");
    // final derivation with assumptions
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nhalf L 1/2 1 0 1\n"
        "RTP range 0 0\nSOLS 1\n0\nDERS 1\nbr L 0 1 0 1 asm\n",
        "assumption-carrying goal");
    // rnd on a fractional coefficient
    refused(
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1/2\nCONS 1\nhalf L 1/2 1 0 1/2\n"
        "RTP range 0 0\nSOLS 1\n0\nDERS 1\ncut L 0 1 0 1/2 rnd 1 C0 1\n",
        "fractional rounding");
}

TEST_CASE("uns resolution rules") {
    // branch on binary x: both branches give x <= 0 is false, but obj <= 1
    std::string base =
        "CERT 1\nVARS 1\nx bin 0 1\nOBJ max 1 0 1\nCONS 1\nr L 1 1 0 1\n"
        "RTP range 1 1\nSOLS 1\n1 0 1\nDERS 5\n"
        "dn L 0 1 0 1 asm\n"
        "b1 L 0 1 0 1 lin 1 D0 1\n"
        "up G 1 1 0 1 asm\n"
        "b2 L 1 1 0 1 lin 1 C0 1\n";
    Certificate good = parse_certificate(base + "res L 1 1 0 1 uns D1 D0 D3 D2\n");
    CHECK(check_certificate(good).ok);
    // non-complementary assumptions
    Certificate bad = parse_certificate(base + "res L 1 1 0 1 uns D1 D0 D3 D0\n");
    CHECK(!check_certificate(bad).ok);
    // stated not dominated by the first branch
    Certificate weak = parse_certificate(base + "res L -1 1 0 1 uns D1 D0 D3 D2\n");
    CHECK(!check_certificate(weak).ok);
}

TEST_CASE("solver certificates round-trip for small models") {
    for (const Model& m : {build_inf(3), build_opt(3), build_red(5)}) {
        std::string text = solver_cert_text(m);
        Certificate c = parse_certificate(text);
        CHECK(serialize_certificate(c) == text);
        CheckVerdict v = check_certificate(c);
        CHECK_MESSAGE(v.ok, v.reason);
    }
}

TEST_CASE("verify_input accepts the emitted model and locates defects") {
    std::string text = solver_cert_text(build_red(5));
    Certificate c = parse_certificate(text);
    CHECK(verify_input(c, {Formulation::Red, 5, 0, {}}).match);
    // wrong formulation: the Berge row is reported missing
    VerifyVerdict wrong = verify_input(c, {Formulation::Opt, 5, 0, {}});
    CHECK(!wrong.match);
    CHECK(!wrong.detail.empty());
    // injected coefficient defect names the row
    Certificate broken = c;
    broken.constraints[10].terms[0].coef += 1;
    VerifyVerdict v = verify_input(broken, {Formulation::Red, 5, 0, {}});
    CHECK(!v.match);
    CHECK(v.detail.find(c.constraints[10].label) != std::string::npos);
    // injected bound defect
    Certificate bound = c;
    bound.vars[30].lb = Rational(1);  // x of the full set is free in RED(5)
    CHECK(!verify_input(bound, {Formulation::Red, 5, 0, {}}).match);
    // level fixing specs
    auto fam = parse_family("{1,2,3,4}", 5);
    Model fixed = apply_level_fixings(build_red(5), 4, *fam);
    Certificate cf = parse_certificate(emit(fixed, EmitFormat::CertProblem));
    CHECK(verify_input(cf, {Formulation::Red, 5, 4, *fam}).match);
    CHECK(!verify_input(cf, {Formulation::Red, 5, 0, {}}).match);
}

TEST_CASE("emitted problem section is byte-identical to modelgen emission") {
    Model m = build_red(5);
    SolveResult res = solve_ip(m);
    std::string text = serialize_certificate(*res.certificate);
    std::string problem = emit(m, EmitFormat::CertProblem);
    CHECK(text.rfind(problem, 0) == 0);
}
