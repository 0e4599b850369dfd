#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace chvip {

// --- certificate data -----------------------------------------------------

struct CertVar {
    std::string name;
    VarKind kind = VarKind::Binary;
    Rational lb;
    std::optional<Rational> ub;  // nullopt = +infinity
};

struct CertConstraint {
    std::string label;
    Sense sense = Sense::LE;
    Rational rhs;
    std::vector<Term> terms;
};

enum class RefKind { Constraint, LowerBound, UpperBound, Derivation };
struct Ref {
    RefKind kind = RefKind::Constraint;
    int index = 0;
    bool operator==(const Ref&) const = default;
};

enum class DerRule { Asm, Lin, Rnd, Uns };

struct Derivation {
    CertConstraint stated;
    DerRule rule = DerRule::Asm;
    std::vector<std::pair<Ref, Rational>> mults;  // lin / rnd
    Ref uns_ref1, uns_aref1, uns_ref2, uns_aref2;
};

struct CertGoal {
    bool infeasible = false;
    Rational lb;
    Rational ub;
};

struct Certificate {
    std::vector<CertVar> vars;
    std::vector<Term> objective;  // maximize
    std::vector<CertConstraint> constraints;
    std::optional<CertGoal> goal;
    std::vector<std::vector<Term>> solutions;  // sparse assignments
    std::vector<Derivation> derivations;
};

// --- parsing / serialization ---------------------------------------------

struct CertParseError : std::runtime_error {
    size_t line;
    CertParseError(size_t line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Throws CertParseError. A file may stop after the CONS section (a bare
// problem description); RTP/SOLS/DERS are required only of full
// certificates.
Certificate parse_certificate(const std::string& text);

std::string serialize_certificate(const Certificate& c);

// --- checking -------------------------------------------------------------

struct CheckVerdict {
    bool ok = false;
    std::string reason;   // empty when ok
    int derivation = -1;  // index of the offending derivation, if any
    int solution = -1;    // index of the offending solution, if any
};

CheckVerdict check_certificate(const Certificate& c);

// --- input verification ---------------------------------------------------

enum class Formulation { Inf, Opt, Red };

struct InputSpec {
    Formulation form = Formulation::Inf;
    int n = 0;
    // level fixing parameters; engaged when m > 0
    int m = 0;
    std::optional<Family> fix_family;
};

struct VerifyVerdict {
    bool match = false;
    std::string detail;  // first difference when mismatched
};

// Regenerates the constraint matrix from the combinatorial definition
// (independently of modelgen) and compares it with the certificate's
// problem section.
VerifyVerdict verify_input(const Certificate& c, const InputSpec& spec);

std::optional<Formulation> parse_formulation(const std::string& s);

}  // namespace chvip
