#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "setcore.hpp"

namespace chvip {

enum class VarRole { X, Y, Z };
enum class VarKind { Binary, NonnegInteger };
enum class Sense { LE, GE, EQ };

struct Variable {
    VarRole role;
    SubsetCode subset = 0;  // meaningless for Z
    VarKind kind;
    Rational lb;
    std::optional<Rational> ub;  // nullopt = +infinity
    std::string name;

    bool fixed() const { return ub.has_value() && lb == *ub; }
};

struct Term {
    int var = 0;
    Rational coef;
    bool operator==(const Term&) const = default;
};

struct LinearConstraint {
    std::string label;
    Sense sense = Sense::LE;
    Rational rhs;
    std::vector<Term> terms;  // strictly increasing var index, no zero coefs
};

// Exact rational constraint system. Variable order is all x_S by ascending
// subset code, then all y_S, then z when present; the empty set carries no
// variable.
struct Model {
    std::string name;
    int n = 0;
    std::vector<Variable> variables;
    std::vector<Term> objective;  // sense: maximize
    std::vector<LinearConstraint> constraints;

    int var_count() const { return static_cast<int>(variables.size()); }
    int fixing_count() const;
    // Index of x_S / y_S in the variable order; -1 when absent.
    int x_index(SubsetCode s) const;
    int y_index(SubsetCode s) const;
    int z_index() const;  // -1 when absent
};

char sense_char(Sense s);

}  // namespace chvip
