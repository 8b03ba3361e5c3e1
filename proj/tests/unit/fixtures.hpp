#pragma once

#include "rsaudit/dataset.hpp"

#include <sstream>
#include <string>

namespace fixtures {

// Two attributes, four profiles:
//   (x,p) 2 pos / 1 neg   (x,q) 0 / 2   (y,p) 1 / 0   (y,q) 1 / 1
// Hand-derived: |U| = 8, POS = {r4, r5, r6}, BND = {r1, r2, r3, r7, r8},
// gamma = 3/8, ceiling = (3 + 2 + 1) / 8 = 3/4.
inline const char *toy_csv =
    "id,a,b,label,split\n"
    "r1,x,p,1,train\n"
    "r2,x,p,1,valid\n"
    "r3,x,p,0,train\n"
    "r4,x,q,0,train\n"
    "r5,x,q,0,valid\n"
    "r6,y,p,1,train\n"
    "r7,y,q,1,valid\n"
    "r8,y,q,0,test\n";

inline rsaudit::Dataset parse(const std::string &text, const rsaudit::IngestConfig &config = {}) {
    std::istringstream in(text);
    return rsaudit::parse_dataset(in, config);
}

inline rsaudit::Dataset toy(const rsaudit::IngestConfig &config = {}) { return parse(toy_csv, config); }

/// Toy data without the split column.
inline rsaudit::Dataset toy_unsplit() {
    rsaudit::IngestConfig cfg;
    cfg.ignore_columns = {"split"};
    cfg.detect_split_column = false;
    return parse(toy_csv, cfg);
}

}  // namespace fixtures
