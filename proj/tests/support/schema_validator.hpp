#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

namespace gaugeprob::testing {

// Validator for the JSON Schema subset used by docs/schema: type, enum,
// const, required, properties, additionalProperties (boolean), items,
// minItems, maxItems, minimum, maximum, exclusiveMinimum, exclusiveMaximum,
// allOf, anyOf, oneOf, not, if/then/else and local "#/$defs/..." refs.
// Unknown keywords are rejected so the subset cannot silently shrink.
class SchemaValidator {
 public:
  using Json = nlohmann::json;

  explicit SchemaValidator(Json root) : root_(std::move(root)) {}

  // Empty result means valid; otherwise one message per violation.
  std::vector<std::string> validate(const Json& instance) const {
    std::vector<std::string> errors;
    check(root_, instance, "$", errors);
    return errors;
  }

 private:
  const Json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  static bool has_type(const Json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "number") return v.is_number();
    if (type == "integer")
      return v.is_number_integer() ||
             (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
    throw std::runtime_error("unknown type " + type);
  }

  bool valid(const Json& schema, const Json& v, const std::string& path) const {
    std::vector<std::string> e;
    check(schema, v, path, e);
    return e.empty();
  }

  void check(const Json& schema, const Json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) errors.push_back(path + ": false schema");
      return;
    }
    for (const auto& [key, s] : schema.items()) {
      if (key == "$schema" || key == "$id" || key == "title" || key == "description" ||
          key == "$defs" || key == "then" || key == "else")
        continue;
      if (key == "$ref") {
        check(resolve(s.get<std::string>()), v, path, errors);
      } else if (key == "type") {
        bool ok = false;
        if (s.is_array()) {
          for (const auto& t : s) ok = ok || has_type(v, t.get<std::string>());
        } else {
          ok = has_type(v, s.get<std::string>());
        }
        if (!ok) errors.push_back(path + ": expected type " + s.dump() + ", got " + v.dump());
      } else if (key == "enum") {
        bool ok = false;
        for (const auto& c : s) ok = ok || c == v;
        if (!ok) errors.push_back(path + ": " + v.dump() + " not in " + s.dump());
      } else if (key == "const") {
        if (s != v) errors.push_back(path + ": expected " + s.dump() + ", got " + v.dump());
      } else if (key == "required") {
        if (v.is_object())
          for (const auto& r : s)
            if (!v.contains(r.get<std::string>()))
              errors.push_back(path + ": missing " + r.get<std::string>());
      } else if (key == "properties") {
        if (v.is_object())
          for (const auto& [name, sub] : s.items())
            if (v.contains(name)) check(sub, v.at(name), path + "." + name, errors);
      } else if (key == "additionalProperties") {
        if (v.is_object() && s.is_boolean() && !s.get<bool>()) {
          const Json props = schema.value("properties", Json::object());
          for (const auto& [name, _] : v.items())
            if (!props.contains(name)) errors.push_back(path + ": unexpected " + name);
        } else if (!s.is_boolean()) {
          throw std::runtime_error("only boolean additionalProperties supported");
        }
      } else if (key == "items") {
        if (v.is_array())
          for (std::size_t i = 0; i < v.size(); ++i)
            check(s, v[i], path + "[" + std::to_string(i) + "]", errors);
      } else if (key == "minItems") {
        if (v.is_array() && v.size() < s.get<std::size_t>())
          errors.push_back(path + ": fewer than " + s.dump() + " items");
      } else if (key == "maxItems") {
        if (v.is_array() && v.size() > s.get<std::size_t>())
          errors.push_back(path + ": more than " + s.dump() + " items");
      } else if (key == "minimum") {
        if (v.is_number() && v.get<double>() < s.get<double>())
          errors.push_back(path + ": below minimum " + s.dump());
      } else if (key == "maximum") {
        if (v.is_number() && v.get<double>() > s.get<double>())
          errors.push_back(path + ": above maximum " + s.dump());
      } else if (key == "exclusiveMinimum") {
        if (v.is_number() && !(v.get<double>() > s.get<double>()))
          errors.push_back(path + ": not above " + s.dump());
      } else if (key == "exclusiveMaximum") {
        if (v.is_number() && !(v.get<double>() < s.get<double>()))
          errors.push_back(path + ": not below " + s.dump());
      } else if (key == "allOf") {
        for (const auto& sub : s) check(sub, v, path, errors);
      } else if (key == "anyOf") {
        bool ok = false;
        for (const auto& sub : s) ok = ok || valid(sub, v, path);
        if (!ok) errors.push_back(path + ": matches no anyOf branch");
      } else if (key == "oneOf") {
        int matches = 0;
        for (const auto& sub : s) matches += valid(sub, v, path) ? 1 : 0;
        if (matches != 1)
          errors.push_back(path + ": matches " + std::to_string(matches) + " oneOf branches");
      } else if (key == "not") {
        if (valid(s, v, path)) errors.push_back(path + ": matches a 'not' schema");
      } else if (key == "if") {
        if (valid(s, v, path)) {
          if (schema.contains("then")) check(schema.at("then"), v, path, errors);
        } else if (schema.contains("else")) {
          check(schema.at("else"), v, path, errors);
        }
      } else {
        throw std::runtime_error("unsupported schema keyword " + key);
      }
    }
  }

  Json root_;
};

}  // namespace gaugeprob::testing
