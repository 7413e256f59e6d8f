#pragma once

#include "segspec/json_io.hpp"

#include <iosfwd>

namespace segspec {

struct BuiltinExample {
    Measure measure;
    std::vector<SpectrumSpec> spectra;
};

// Built-in constructions: "th-parallel" (three parallel segments with an
// irrational shift), "th-L" (four segments without a line spectrum),
// "parallel-pair", "cross(t1,t2,T1,T2)", "collinear(len1,len2,gap)".
BuiltinExample builtin_examples(const std::string& name);

// Command-line front end. Exit codes: 0 pass/ok, 1 fail/non-spectral,
// 2 inconclusive, 3 input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segspec
