#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace chvip {

Model build_inf(int n);
Model build_opt(int n);
Model build_red(int n);

// RED^{k,m}_S level fixings on top of build_red(n). Every member of
// fix_family must have size m; conflicts with fixings already present in
// the base model are rejected.
Model apply_level_fixings(const Model& base, int m, const Family& fix_family);

// One constraint sum y_S <= 1 per partition of [n] into 2..max_parts
// nonempty parts. Variable indices refer to the build_inf/build_opt order.
std::vector<LinearConstraint> partition_cuts(int n, int max_parts);

enum class EmitFormat { CertProblem, Readable };
std::string emit(const Model& m, EmitFormat format);

// Reporting convention T1: #ineqs counts all emitted constraint rows plus
// one unit-upper-bound row per unfixed x variable (the y upper bounds are
// dominated by rows of the model and are not counted). Equality fixings
// are reported separately.
struct ModelStats {
    int vars = 0;
    int vars_excluding_z = 0;
    long ineqs = 0;
    int fixings = 0;
};
ModelStats stats(const Model& m);

std::string var_name(VarRole role, SubsetCode subset);
std::string subset_suffix(SubsetCode s);

}  // namespace chvip
