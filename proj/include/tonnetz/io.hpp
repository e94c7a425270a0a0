#pragma once

#include "tonnetz/bottleneck.hpp"
#include "tonnetz/persistence.hpp"
#include "tonnetz/tonnetz.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace tonnetz::io {

using nlohmann::json;

struct LabeledProfile {
    std::string label;
    bool normalized = false;
    PitchClassProfile profile;
};

struct LabeledDiagram {
    std::string profile_ref;
    PersistenceDiagram diagram;
};

struct LabeledMatrix {
    std::vector<std::string> labels;
    int degree = 0;
    DistanceMatrix matrix;
};

/// {"label": s, "normalized": b, "durations": [12 numbers]}
json to_json(const LabeledProfile& p);
LabeledProfile profile_from_json(const json& doc);

/// {"degree": k, "essential": [u...], "proper": [[u, v]...], "profile_ref": s}
json to_json(const LabeledDiagram& d);
LabeledDiagram diagram_from_json(const json& doc);

/// {"labels": [...], "degree": k, "matrix": [[...]...]}; +inf is written as null.
json to_json(const LabeledMatrix& m);
LabeledMatrix matrix_from_json(const json& doc);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

/// Stable text form: sorted keys, shortest round-trip numbers, trailing newline.
std::string dump(const json& doc);

} // namespace tonnetz::io
