#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nijenhuis/expression.hpp"
#include "nijenhuis/fman.hpp"
#include "nijenhuis/forms.hpp"
#include "nijenhuis/tensor.hpp"
#include "nijenhuis/verify.hpp"

namespace nijenhuis {

/// Optional metadata attached to a model. Expressions are kept as source text and parsed
/// on demand against the model variables (or, for the 3D PDE data, against their own).
struct ModelMeta {
  std::string name;
  std::string family;
  std::vector<std::string> checks;       // expected checks; empty = all applicable
  std::vector<std::size_t> partition;    // block sizes for the split check
  std::vector<std::string> eigenvalues;  // candidates for the eigen-invariant check
  std::optional<int> k;
  std::optional<Sign> sign;
  std::optional<std::string> lambda0;
  std::optional<std::string> f, g, h;
  std::optional<HPairing> pairing;

  friend bool operator==(const ModelMeta&, const ModelMeta&) = default;
};

/// Parsed model document. See docs/model-format.md for the JSON schema.
struct Model {
  std::vector<std::string> variables;
  RingMode mode;
  std::optional<OperatorField> L;
  std::optional<VectorField> e;
  std::optional<VectorField> E;
  std::optional<Multiplication> circ;
  ModelMeta meta;

  std::size_t dim() const { return variables.size(); }
};

/// Parses a model document. A series model uses `force_order` if set, else its own order,
/// else `default_order`. Throws ModelError (schema) or ParseError (JSON or expression; the
/// message carries the entry path).
Model load_model(const std::string& text, int default_order = kDefaultSeriesOrder,
                 std::optional<int> force_order = std::nullopt);
Model load_model_file(const std::string& path, int default_order = kDefaultSeriesOrder,
                      std::optional<int> force_order = std::nullopt);

/// Canonical JSON for a model; load_model(model_to_json(m)) is semantically equal to m.
std::string model_to_json(const Model& model);

/// Builds the form for `spec` and records its parameters and eigenvalues in the metadata.
Model model_from_spec(const FormSpec& spec);

}  // namespace nijenhuis
