#pragma once

// JSON documents: parsing into library objects, invariant validation and
// canonical serialization.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "hgk/abelian.hpp"
#include "hgk/cech.hpp"
#include "hgk/error.hpp"
#include "hgk/groupoid.hpp"
#include "hgk/sset.hpp"

namespace hgk::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON, or a payload that does not match its kind's schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

enum class Kind {
  simplicial_set,
  simplicial_abelian_group,
  groupoid,
  local_system,
  cover,
  presheaf,
  chain_complex,
  morphism
};

std::string to_string(Kind kind);
std::optional<Kind> kind_from_string(const std::string& s);

struct PresheafDocument {
  FiniteCover cover;
  Presheaf presheaf;
};

using Body = std::variant<SSetPtr, SimplicialAbelianGroup, FiniteGroupoid, LocalSystemData, FiniteCover,
                          PresheafDocument, ChainComplex, SimplicialMorphism>;

struct Document {
  Kind kind;
  Body body;
};

/// Objects are built without their invariant checks where the library
/// allows it; laws enforced at construction (well-defined homomorphisms,
/// presheaf functoriality) surface as InvariantViolation. Schema problems
/// throw ParseError.
Document parse_document(const Json& j);
Document parse_document_text(const std::string& text);
/// The first violated structural invariant, if any.
std::optional<std::string> validate_document(const Document& doc);

Json serialize(const Document& doc);
std::string dump(const Json& j);

Json to_json(const SimplicialSet& X);
Json to_json(const SimplicialMorphism& f);
Json to_json(const FiniteGroupoid& g);
Json to_json(const FGAbelianGroup& g);
Json to_json(const Matrix& m);
Json to_json(const ChainComplex& C);
Json to_json(const SimplicialAbelianGroup& A);
Json to_json(const FiniteCover& c);
Json to_json(const FiniteCover& c, const Presheaf& F);
Json to_json(const LocalSystemData& L);

Document make_document(Kind kind, Body body);

/// "0", "Z", "Z^2", "Z/6", "Z+Z/2+Z/4" (any order; canonicalized).
FGAbelianGroup parse_group(const std::string& text);

}  // namespace hgk::io
