#pragma once

// JSON formats:
//
//   ring        {"kind":"zmod","m":6}
//               {"kind":"galois","p":2,"k":2,"minpoly":[1,1,1]}
//               {"kind":"product","factors":[...],"swap":[1,0]}
//               optional "automorphism": "identity" | {"frobenius":e} | {"swap+components":[...]}
//   matrix      {"rows":r,"cols":s,"entries":[["poly",...],...]}
//   certificate {"kind":"similarity","F":m,"P":m,"Pinv":m,"bound":d}   (also intertwiner,
//               equivalence with G/Q/Qinv, freeness with rank)
//   report      {"matrix","target","bounds","seed","global","locals","verdict"}

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oreq/certificates.hpp"
#include "oreq/errors.hpp"
#include "oreq/patching.hpp"
#include "oreq/skew_matrix.hpp"

namespace oreq {

using Json = nlohmann::ordered_json;

/// Ring plus automorphism, as read from a descriptor.
struct RingSpec {
  RingPtr ring;
  Automorphism sigma;
};

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + name + "': " + e.what());
  }
}

inline RingPtr ring_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "zmod") return Ring::zmod(get<int>(j, "m"));
  if (kind == "galois") return Ring::galois(get<int>(j, "p"), get<int>(j, "k"), get<std::vector<int>>(j, "minpoly"));
  if (kind == "product") {
    std::vector<RingPtr> factors;
    for (const auto& f : field(j, "factors")) factors.push_back(ring_from_json(f));
    return Ring::product(std::move(factors));
  }
  throw InputError("unknown ring kind '" + kind + "'");
}

inline Automorphism automorphism_from_json(const RingPtr& ring, const Json& a, const std::vector<int>& swap) {
  if (a.is_string()) {
    if (a.get<std::string>() != "identity") throw InputError("unknown automorphism '" + a.get<std::string>() + "'");
    return Automorphism::identity(ring);
  }
  if (a.is_object() && a.contains("frobenius")) return Automorphism::frobenius(ring, get<int>(a, "frobenius"));
  if (a.is_object() && a.contains("swap+components")) {
    if (ring->kind() != RingKind::product) throw InputError("swap+components needs a product ring");
    const auto& comps = a.at("swap+components");
    if (!comps.is_array() || comps.size() != ring->factors().size())
      throw InputError("swap+components needs one automorphism per factor");
    std::vector<Automorphism> parts;
    for (std::size_t i = 0; i < comps.size(); ++i)
      parts.push_back(automorphism_from_json(ring->factors()[i], comps[i], {}));
    return Automorphism::product(ring, parts, swap);
  }
  throw InputError("unrecognized automorphism field");
}

}  // namespace detail

inline RingSpec ring_spec_from_json(const Json& j) {
  try {
    auto ring = detail::ring_from_json(j);
    std::vector<int> swap;
    if (j.contains("swap")) swap = detail::get<std::vector<int>>(j, "swap");
    Json a = j.contains("automorphism") ? j.at("automorphism") : Json("identity");
    return {ring, detail::automorphism_from_json(ring, a, swap)};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("ring descriptor: ") + e.what());
  }
}

inline Json ring_to_json(const Ring& R) {
  switch (R.kind()) {
    case RingKind::zmod: return {{"kind", "zmod"}, {"m", R.modulus()}};
    case RingKind::galois:
      return {{"kind", "galois"}, {"p", R.characteristic()}, {"k", R.extension_degree()},
              {"minpoly", R.minimal_polynomial()}};
    case RingKind::product: {
      Json f = Json::array();
      for (const auto& r : R.factors()) f.push_back(ring_to_json(*r));
      return {{"kind", "product"}, {"factors", f}};
    }
    case RingKind::quotient: return {{"kind", "quotient"}, {"key", R.key()}};
  }
  return {};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Resolves a ring file, falling back to $OREQ_RING_DIR for relative names.
inline std::string resolve_ring_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("OREQ_RING_DIR"); dir && fs::path(path).is_relative()) {
    auto candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

inline RingSpec load_ring(const std::string& path) { return ring_spec_from_json(read_json_file(resolve_ring_path(path))); }

// -- matrices -----------------------------------------------------------------------

inline Json matrix_to_json(const SkewMatrix& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_string(M(i, j)));
    rows.push_back(row);
  }
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", rows}};
}

inline SkewMatrix matrix_from_json(const Json& j, const AmbientPtr& ambient) {
  auto rows = detail::get<std::size_t>(j, "rows");
  auto cols = detail::get<std::size_t>(j, "cols");
  auto entries = detail::get<std::vector<std::vector<std::string>>>(j, "entries");
  if (entries.size() != rows) throw InputError("matrix: entries has " + std::to_string(entries.size()) + " rows, expected " + std::to_string(rows));
  for (const auto& r : entries)
    if (r.size() != cols) throw InputError("matrix: a row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(cols));
  if (rows == 0 || cols == 0) throw InputError("matrix must be nonempty");
  return SkewMatrix::parse(ambient, entries);
}

// -- certificates -------------------------------------------------------------------

inline Json certificate_to_json(const Certificate& c) {
  Json j{{"kind", kind_name(c.kind)}, {"F", matrix_to_json(c.F)}};
  if (c.G) j["G"] = matrix_to_json(*c.G);
  j["P"] = matrix_to_json(c.P);
  if (c.Pinv) j["Pinv"] = matrix_to_json(*c.Pinv);
  if (c.Q) j["Q"] = matrix_to_json(*c.Q);
  if (c.Qinv) j["Qinv"] = matrix_to_json(*c.Qinv);
  j["bound"] = c.bound;
  if (c.kind == CertificateKind::freeness) j["rank"] = c.rank;
  return j;
}

inline Certificate certificate_from_json(const Json& j, const AmbientPtr& ambient) {
  auto opt = [&](const char* name) -> std::optional<SkewMatrix> {
    if (!j.contains(name)) return std::nullopt;
    return matrix_from_json(j.at(name), ambient);
  };
  Certificate c{parse_kind(detail::get<std::string>(j, "kind")),
                matrix_from_json(detail::field(j, "F"), ambient),
                opt("G"),
                matrix_from_json(detail::field(j, "P"), ambient),
                opt("Pinv"),
                opt("Q"),
                opt("Qinv"),
                detail::get<int>(j, "bound"),
                j.contains("rank") ? detail::get<std::size_t>(j, "rank") : 0};
  return c;
}

// -- reports --------------------------------------------------------------------------

inline Json bounds_to_json(const SearchBounds& b) {
  return {{"degree", b.degree}, {"budget", b.budget}, {"words", b.words}, {"word_length", b.word_length}};
}

inline Json witness_to_json(const EquivalenceWitness& w) {
  return {{"P", matrix_to_json(w.left.P)},
          {"Pinv", matrix_to_json(w.left.Pinv)},
          {"Q", matrix_to_json(w.right.P)},
          {"Qinv", matrix_to_json(w.right.Pinv)}};
}

inline Json ideal_to_json(const MaximalIdeal& m) {
  Json out = Json::array();
  for (Elem e : m.elements) out.push_back(m.ring->name(e));
  return out;
}

inline Json suite_to_json(const SuiteReport& r) {
  Json global{{"status", r.global ? "witness" : "not-found-within-bound"}};
  global["witness"] = r.global ? witness_to_json(*r.global) : Json(nullptr);
  Json locals = Json::array();
  for (const auto& l : r.locals) {
    Json e{{"ideal", ideal_to_json(l.ideal)}, {"status", status_name(l.status)}};
    e["ring"] = l.ambient->ring()->key();
    e["witness"] = l.witness ? witness_to_json(*l.witness) : Json(nullptr);
    if (l.status == LocalStatus::localized_global) e["verified"] = l.verified;
    locals.push_back(std::move(e));
  }
  return {{"matrix", matrix_to_json(r.F)},
          {"target", matrix_to_json(r.G)},
          {"bounds", bounds_to_json(r.bounds)},
          {"seed", r.seed},
          {"global", global},
          {"locals", locals},
          {"verdict", r.consistent ? "consistent" : "inconsistent"}};
}

inline Json patching_to_json(const PatchingReport& r, const SkewMatrix& B) {
  Json perm{{"rows", r.permutation.rows},
            {"cols", r.permutation.cols},
            {"row_matrix", matrix_to_json(r.permutation.row_matrix)},
            {"col_matrix", matrix_to_json(r.permutation.col_matrix)}};
  return {{"presentation", matrix_to_json(B)},
          {"F", matrix_to_json(r.blocks.F)},
          {"G", matrix_to_json(r.blocks.G)},
          {"permutation", perm},
          {"extended", r.extended() ? "extended" : "not-found-within-bound"},
          {"suite", suite_to_json(r.suite)}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace oreq
