#pragma once

#include <string>

#include "json.hpp"

#include "commham/classifier.hpp"
#include "commham/gadgets.hpp"
#include "commham/lie.hpp"
#include "commham/simulator.hpp"
#include "commham/synthesizer.hpp"

namespace commham {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(cplx z);
json to_json(const CMat2& m);
json to_json(const CMat4& m);
cplx complex_from_json(const json& j);
CMat2 cmat2_from_json(const json& j);
CMat4 cmat4_from_json(const json& j);

/// {"schema": 1, "matrix": 4×4 of [re, im], "label": optional}
json hamiltonian_to_json(const CMat4& h, const std::string& label = {});
CMat4 hamiltonian_from_json(const json& j);

struct CircuitFile {
  CircuitSpec spec;
  GateModel model;
};

json circuit_to_json(const CircuitSpec& spec, const GateModel& model);
CircuitFile circuit_from_json(const json& j);

json to_json(const LocalDiagonalization& ld);
json to_json(const CanonicalParams& p);
json to_json(const Margins& m);
json to_json(const HamClass& c);
json to_json(const GadgetMatrix& g);
json to_json(const InversionPlan& plan);
json to_json(const LieSpanReport& r);
json to_json(const SynthesisResult& r);
json to_json(const CoverageReport& r);

/// Reads and parses a JSON file; throws Error(Parse) on failure.
json read_json_file(const std::string& path);

}  // namespace commham
