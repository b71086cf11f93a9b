#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpbound/certificate.hpp"
#include "lpbound/delsarte.hpp"
#include "lpbound/group.hpp"
#include "lpbound/improved.hpp"
#include "lpbound/lp.hpp"
#include "lpbound/torus.hpp"

namespace lpbound::io {

using nlohmann::json;

// Malformed input; carries a human-readable location when known.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text; errors report `source:line:column`.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);

// Group: {"cyclic_orders":[6]}
FiniteAbelianGroup group_from_json(const json& j);
json to_json(const FiniteAbelianGroup& group);

json element_json(const FiniteAbelianGroup& group, std::size_t index);
json elements_json(const FiniteAbelianGroup& group, const std::vector<std::size_t>& indices);
std::vector<std::size_t> elements_from_json(const FiniteAbelianGroup& group, const json& list);

// Forbidden set: {"members":[[1],[5]]}; 0 is always added.
ForbiddenSet forbidden_from_json(const FiniteAbelianGroup& group, const json& j);
json to_json(const ForbiddenSet& forbidden);
json to_json(const ForbiddenSetReport& report);

// Group function: {"re":[...],"im":[...]} in canonical index order ("im" optional).
GroupFunction function_from_json(const FiniteAbelianGroup& group, const json& j);
json to_json(const GroupFunction& f);
json to_json(const DualFunction& f);

// Matrix: {"n":6,"re":[[...]],"im":[[...]]}, row-major nested arrays.
ComplexMatrix matrix_from_json(const json& j);
json to_json(const ComplexMatrix& m);

// Params: {"a_phase": ..., "b_phase": ...}
FourierFamilyParams params_from_json(const json& j);

json to_json(const LinearProgram& lp);
LinearProgram lp_from_json(const json& j);
json to_json(const LpSolution& solution);

json to_json(const DelsarteWitness& witness);
json to_json(const WitnessCheck& check, const FiniteAbelianGroup& group);
json to_json(const ProofAudit& audit, const FiniteAbelianGroup& group);
json to_json(const BoundReport& report);
json to_json(const MaxSetResult& result, const FiniteAbelianGroup& group);

json to_json(const SecondWitness& witness);
json to_json(const SecondWitnessCheck& check, const FiniteAbelianGroup& group);
json to_json(const ImprovedBound& bound);
json to_json(const CorollaryVerdict& verdict, const FiniteAbelianGroup& group);

json to_json(const TorusRatio& ratio);
json to_json(const G0Minimum& minimum);
json to_json(const SBoundChain& chain);
json to_json(const Certificate& cert);

json complex_json(Complex z);

}  // namespace lpbound::io
