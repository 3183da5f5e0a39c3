#include "nijenhuis/model.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys = {"variables", "mode", "L", "e", "E", "circ", "meta"};
const std::set<std::string> kMetaKeys = {"name",   "family", "checks", "partition", "eigenvalues",
                                         "k",      "sign",   "lambda0", "f",        "g",
                                         "h",      "pairing"};

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& expect(const json& node, json::value_t type, const std::string& path,
                   const char* what) {
  const bool ok = node.type() == type ||
                  (type == json::value_t::number_integer && node.is_number_unsigned());
  if (!ok) throw ModelError(path, std::string("expected ") + what);
  return node;
}

std::string expression_text(const json& node, const std::string& path) {
  if (node.is_string()) return node.get<std::string>();
  if (node.is_number_integer()) return std::to_string(node.get<long long>());
  throw ModelError(path, "expected an expression string");
}

class Loader {
 public:
  Loader(const json& doc, int default_order, std::optional<int> force_order)
      : doc_(doc), default_order_(default_order), force_order_(force_order) {}

  Model run() {
    expect(doc_, json::value_t::object, "", "a JSON object");
    for (const auto& [key, value] : doc_.items()) {
      if (!kTopKeys.contains(key)) throw ModelError(key, "unknown key");
    }
    if (!doc_.contains("variables")) throw ModelError("variables", "missing");
    model_.variables = variables(doc_["variables"]);
    model_.mode = mode();
    const std::size_t n = model_.dim();
    if (doc_.contains("L")) model_.L = matrix(doc_["L"], n);
    if (doc_.contains("e")) model_.e = vector(doc_["e"], "e", n);
    if (doc_.contains("E")) model_.E = vector(doc_["E"], "E", n);
    if (doc_.contains("circ")) model_.circ = circ(doc_["circ"], n);
    if (doc_.contains("meta")) model_.meta = meta(doc_["meta"]);
    return std::move(model_);
  }

 private:
  std::vector<std::string> variables(const json& node) {
    expect(node, json::value_t::array, "variables", "an array of names");
    if (node.empty()) throw ModelError("variables", "at least one variable is required");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string path = at("variables", i);
      const std::string name = expect(node[i], json::value_t::string, path, "a name").get<std::string>();
      if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        throw ModelError(path, "not an identifier: '" + name + "'");
      }
      for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
          throw ModelError(path, "not an identifier: '" + name + "'");
        }
      }
      if (name == "exp") throw ModelError(path, "'exp' is reserved");
      if (!seen.insert(name).second) throw ModelError(path, "duplicate variable '" + name + "'");
      names.push_back(name);
    }
    return names;
  }

  RingMode mode() {
    std::optional<int> order;
    bool series = false;
    if (doc_.contains("mode")) {
      const json& m = doc_["mode"];
      if (m.is_string()) {
        const auto s = m.get<std::string>();
        if (s == "series") series = true;
        else if (s != "poly") throw ModelError("mode", "expected \"poly\", \"series\" or {\"series\": N}");
      } else if (m.is_object() && m.size() == 1 && m.contains("series")) {
        series = true;
        const json& v = m["series"];
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
          throw ModelError("mode.series", "expected a non-negative integer order");
        }
        order = static_cast<int>(v.get<long long>());
      } else {
        throw ModelError("mode", "expected \"poly\", \"series\" or {\"series\": N}");
      }
    }
    if (!series) return RingMode::poly();
    if (force_order_) return RingMode::series(*force_order_);
    return RingMode::series(order.value_or(default_order_));
  }

  RingElem expression(const json& node, const std::string& path) {
    const std::string text = expression_text(node, path);
    try {
      return parse_expression(text, model_.variables, model_.mode);
    } catch (const ParseError& err) {
      throw ParseError(path + ": " + err.what(), err.position());
    } catch (const Error& err) {
      throw ModelError(path, err.what());
    }
  }

  OperatorField matrix(const json& node, std::size_t n) {
    expect(node, json::value_t::array, "L", "an array of rows");
    if (node.size() != n) {
      throw ModelError("L", "expected " + std::to_string(n) + " rows, got " + std::to_string(node.size()));
    }
    OperatorField L(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string row = at("L", i);
      expect(node[i], json::value_t::array, row, "an array of entries");
      if (node[i].size() != n) throw ModelError(row, "expected " + std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j) L(i, j) = expression(node[i][j], at(row, j));
    }
    return L;
  }

  VectorField vector(const json& node, const std::string& key, std::size_t n) {
    expect(node, json::value_t::array, key, "an array of components");
    if (node.size() != n) throw ModelError(key, "expected " + std::to_string(n) + " components");
    VectorField v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = expression(node[i], at(key, i));
    return v;
  }

  Multiplication circ(const json& node, std::size_t n) {
    expect(node, json::value_t::object, "circ", "an object keyed by \"i,j,k\"");
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, RingElem> given;
    for (const auto& [key, value] : node.items()) {
      const std::string path = "circ[" + key + "]";
      std::istringstream in(key);
      std::size_t idx[3];
      char c1 = 0, c2 = 0;
      if (!(in >> idx[0] >> c1 >> idx[1] >> c2 >> idx[2]) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
        throw ModelError(path, "key must be \"i,j,k\" with 1-based indices");
      }
      for (auto& v : idx) {
        if (v < 1 || v > n) throw ModelError(path, "index out of range 1.." + std::to_string(n));
        --v;
      }
      given.emplace(std::make_tuple(idx[0], idx[1], idx[2]), expression(value, path));
    }
    Multiplication m(n);
    for (const auto& [key, value] : given) {
      const auto [i, j, k] = key;
      const auto mirror = given.find({i, k, j});
      if (mirror != given.end() && !(mirror->second == value)) {
        throw ModelError("circ[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                             std::to_string(k + 1) + "]",
                         "asymmetric structure constants");
      }
      m.set(i, j, k, value);
    }
    return m;
  }

  ModelMeta meta(const json& node) {
    expect(node, json::value_t::object, "meta", "an object");
    ModelMeta meta;
    for (const auto& [key, value] : node.items()) {
      if (!kMetaKeys.contains(key)) throw ModelError("meta." + key, "unknown key");
    }
    const auto text = [&](const char* key) -> std::optional<std::string> {
      if (!node.contains(key)) return std::nullopt;
      return expression_text(node[key], std::string("meta.") + key);
    };
    if (node.contains("name")) meta.name = expect(node["name"], json::value_t::string, "meta.name", "a string").get<std::string>();
    if (node.contains("family")) meta.family = expect(node["family"], json::value_t::string, "meta.family", "a string").get<std::string>();
    if (node.contains("checks")) {
      expect(node["checks"], json::value_t::array, "meta.checks", "an array of check names");
      for (std::size_t i = 0; i < node["checks"].size(); ++i) {
        meta.checks.push_back(expect(node["checks"][i], json::value_t::string, at("meta.checks", i), "a check name").get<std::string>());
      }
    }
    if (node.contains("partition")) {
      expect(node["partition"], json::value_t::array, "meta.partition", "an array of sizes");
      for (std::size_t i = 0; i < node["partition"].size(); ++i) {
        const json& v = node["partition"][i];
        if (!v.is_number_integer() || v.get<long long>() < 1) throw ModelError(at("meta.partition", i), "expected a positive size");
        meta.partition.push_back(static_cast<std::size_t>(v.get<long long>()));
      }
    }
    if (node.contains("eigenvalues")) {
      expect(node["eigenvalues"], json::value_t::array, "meta.eigenvalues", "an array of expressions");
      for (std::size_t i = 0; i < node["eigenvalues"].size(); ++i) {
        const std::string path = at("meta.eigenvalues", i);
        meta.eigenvalues.push_back(expression_text(node["eigenvalues"][i], path));
        expression(node["eigenvalues"][i], path);  // validate now, parse again on use
      }
    }
    if (node.contains("k")) {
      const json& v = node["k"];
      if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 64) {
        throw ModelError("meta.k", "expected a positive integer");
      }
      meta.k = static_cast<int>(v.get<long long>());
    }
    if (node.contains("sign")) {
      const std::string s = node["sign"].is_string() ? node["sign"].get<std::string>() : "";
      if (s == "+") meta.sign = Sign::plus;
      else if (s == "-") meta.sign = Sign::minus;
      else throw ModelError("meta.sign", "expected \"+\" or \"-\"");
    }
    if (node.contains("pairing")) {
      const std::string s = node["pairing"].is_string() ? node["pairing"].get<std::string>() : "";
      if (s == "consistent") meta.pairing = HPairing::consistent;
      else if (s == "printed") meta.pairing = HPairing::printed;
      else throw ModelError("meta.pairing", "expected \"consistent\" or \"printed\"");
    }
    meta.lambda0 = text("lambda0");
    if (meta.lambda0) {
      try {
        (void)Rational::parse(*meta.lambda0);
      } catch (const Error& err) {
        throw ModelError("meta.lambda0", err.what());
      }
    }
    meta.f = text("f");
    meta.g = text("g");
    meta.h = text("h");
    for (const auto& [key, value] : {std::pair{"f", &meta.f}, {"g", &meta.g}, {"h", &meta.h}}) {
      if (*value) expression(node[key], std::string("meta.") + key);
    }
    return meta;
  }

  const json& doc_;
  int default_order_;
  std::optional<int> force_order_;
  Model model_;
};

json expr(const RingElem& p, std::span<const std::string> names) { return to_string(p, names); }

}  // namespace

Model load_model(const std::string& text, int default_order, std::optional<int> force_order) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what(), err.byte);
  }
  return Loader(doc, default_order, force_order).run();
}

Model load_model_file(const std::string& path, int default_order, std::optional<int> force_order) {
  std::ifstream in(path);
  if (!in) throw ModelError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_model(buffer.str(), default_order, force_order);
}

std::string model_to_json(const Model& model) {
  const auto& names = model.variables;
  const std::size_t n = model.dim();
  json doc;
  doc["variables"] = names;
  if (model.mode.is_series()) doc["mode"] = json{{"series", *model.mode.series_order}};
  else doc["mode"] = "poly";
  if (model.L) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(expr((*model.L)(i, j), names));
      rows.push_back(std::move(row));
    }
    doc["L"] = std::move(rows);
  }
  const auto field = [&](const VectorField& v) {
    json out = json::array();
    for (std::size_t i = 0; i < n; ++i) out.push_back(expr(v[i], names));
    return out;
  };
  if (model.e) doc["e"] = field(*model.e);
  if (model.E) doc["E"] = field(*model.E);
  if (model.circ) {
    json c = json::object();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const RingElem& v = (*model.circ)(i, j, k);
          if (v.is_zero()) continue;
          c[std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1)] = expr(v, names);
        }
      }
    }
    doc["circ"] = std::move(c);
  }
  const ModelMeta& m = model.meta;
  json meta = json::object();
  if (!m.name.empty()) meta["name"] = m.name;
  if (!m.family.empty()) meta["family"] = m.family;
  if (!m.checks.empty()) meta["checks"] = m.checks;
  if (!m.partition.empty()) meta["partition"] = m.partition;
  if (!m.eigenvalues.empty()) meta["eigenvalues"] = m.eigenvalues;
  if (m.k) meta["k"] = *m.k;
  if (m.sign) meta["sign"] = *m.sign == Sign::plus ? "+" : "-";
  if (m.pairing) meta["pairing"] = *m.pairing == HPairing::consistent ? "consistent" : "printed";
  if (m.lambda0) meta["lambda0"] = *m.lambda0;
  if (m.f) meta["f"] = *m.f;
  if (m.g) meta["g"] = *m.g;
  if (m.h) meta["h"] = *m.h;
  if (!meta.empty()) doc["meta"] = std::move(meta);
  return doc.dump(2);
}

Model model_from_spec(const FormSpec& spec) {
  const Form form = build_form(spec);
  Model model;
  model.variables = form.variables;
  model.mode = form.mode;
  model.L = form.L;
  model.e = form.e;
  model.meta.family = spec.family;
  model.meta.name = spec.family + (spec.n ? "-" + std::to_string(*spec.n) : std::string{});
  for (const auto& lambda : form.eigenvalues) model.meta.eigenvalues.push_back(to_string(lambda, form.variables));
  if (spec.lambda0) model.meta.lambda0 = spec.lambda0->to_string();
  if (spec.family.rfind("dim3-", 0) == 0) {
    model.meta.k = spec.k;
    model.meta.sign = spec.sign.value_or(Sign::plus);
    model.meta.f = to_string(form.L(2, 0), form.variables);
    model.meta.g = to_string(form.L(2, 1), form.variables);
  }
  return model;
}

}  // namespace nijenhuis
