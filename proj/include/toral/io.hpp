#ifndef TORAL_IO_HPP
#define TORAL_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "toral/actions.hpp"
#include "toral/cdga.hpp"
#include "toral/classify.hpp"

namespace toral {

using json = nlohmann::ordered_json;

/*
 * JSON documents read and written by the command-line tool.
 *
 * Integers may be JSON integers or decimal strings; rationals are "n" or
 * "n/d" strings (or JSON integers). Floats and booleans are rejected. Every
 * ParseError names the offending field as a path like rows[2].k.
 *
 * action:  {"n_factors": 3, "rows": [{"a": 1, "b": 1, "k": 0, "l": 0}, ...]}
 * circle:  {"factors": [{"sphere_dim": 5, "weights": [1, 1, 1]}, ...]}
 * model:   {"kind": "minimal",
 *           "generators": [{"name": "u", "degree": 2}, ...],
 *           "differential": {"x": [{"coeff": "1/1", "monomial": {"u": 2}}]}}
 */

/// Parses text, reporting syntax errors as "line L, column C: ...".
json parse_document(std::string_view text);
json read_document(const std::string& path);

Integer integer_field(const json& j, const std::string& path);
Rational rational_field(const json& j, const std::string& path);

TorusActionS3 action_from_json(const json& j);
json to_json(const TorusActionS3& act);

CircleActionSpheres circle_from_json(const json& j);
json to_json(const CircleActionSpheres& act);

FreeCDGA model_from_json(const json& j);
json to_json(const FreeCDGA& model);

json to_json(const BinaryQuadraticForm& f);
json to_json(const FreenessReport& r);
json to_json(const NormalizedActionS3& n);
json to_json(const ClassificationResult& r);
json to_json(const HomotopyProfile& p);
json to_json(const SphereFactorization& f);

} // namespace toral

#endif
