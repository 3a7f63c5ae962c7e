#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "torlang/frobloop.hpp"
#include "torlang/langlands.hpp"

namespace torlang::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "torlang-datum/1";

// A structural problem in a datum document, located by a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& message)
      : Error("parse-error", (path.empty() ? "/" : path) + ": " + message), path_(path.empty() ? "/" : path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// ---- writing ----

inline json int_to_json(const Int& x) {
  if (x.fits_slong_p()) {
    long v = x.get_si();
    if (v <= (1L << 53) && v >= -(1L << 53)) return v;
  }
  return x.get_str();
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

inline json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

inline json group_to_json(const FiniteGroup& g) {
  json t = json::array();
  for (const auto& row : g.table()) t.push_back(row);
  return t;
}

inline json presentation_to_json(const FgAbelianGroup& a) {
  return {{"generators", a.generator_count()}, {"relations", matrix_to_json(a.relations())}};
}

inline json actions_to_json(const GModule& m) {
  json a = json::array();
  for (const auto& x : m.actions()) a.push_back(matrix_to_json(x));
  return a;
}

inline json gmodule_payload(const GModule& m) {
  json j = presentation_to_json(m.module());
  j["group"] = group_to_json(m.group());
  j["action"] = actions_to_json(m);
  return j;
}

inline json with_header(const std::string& kind, json payload) {
  json j = {{"version", kVersion}, {"kind", kind}};
  for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline json to_json(const FiniteGroup& g) { return with_header("group", {{"table", group_to_json(g)}}); }
inline json to_json(const GModule& m) { return with_header("gmodule", gmodule_payload(m)); }

inline json to_json(const TorusDatum& t) {
  json j = {{"name", t.name}, {"group", group_to_json(t.gamma())}, {"cochar_rank", t.rank()}, {"action", actions_to_json(t.cochar)}};
  if (t.ambient)
    j["ambient"] = {{"group", group_to_json(t.ambient->group)}, {"embedding", t.ambient->embedding}, {"frobenius", t.ambient->frobenius}};
  if (t.frobenius) j["frobenius_matrix"] = matrix_to_json(*t.frobenius);
  if (t.induced_from) j["induced_from"] = {{"members", t.induced_from->members}, {"action", actions_to_json(t.induced_from->module)}};
  return with_header("torus", j);
}

inline json to_json(const ClassFormationDatum& f) {
  const ExtensionGroup& e = f.ext;
  json cocycle = json::array();
  for (int x = 0; x < e.base().order(); ++x) {
    json row = json::array();
    for (int y = 0; y < e.base().order(); ++y) row.push_back(vec_to_json(e.u(x, y)));
    cocycle.push_back(row);
  }
  json offsets = json::array();
  for (const auto& v : e.offsets()) offsets.push_back(vec_to_json(v));
  json corr = json::array();
  for (const auto& v : e.twist().correction) corr.push_back(vec_to_json(v));
  json j = {{"name", f.name},
            {"group", group_to_json(e.base())},
            {"module", presentation_to_json(e.kernel().module())},
            {"action", actions_to_json(e.kernel())},
            {"cocycle", cocycle},
            {"offsets", offsets},
            {"frobenius", {{"on_group", e.twist().on_group}, {"on_kernel", matrix_to_json(e.twist().on_kernel)}, {"correction", corr}}}};
  return with_header("formation", j);
}

inline json frobmodule_payload(const FrobeniusModule& p) {
  json j = presentation_to_json(p.group());
  j["frobenius"] = matrix_to_json(p.matrix());
  return j;
}

inline json to_json(const FrobeniusModule& p) { return with_header("frobmodule", frobmodule_payload(p)); }

inline json to_json(const FiltrationDatum& f) {
  json chain = json::array();
  for (const auto& q : f.chain()) {
    json gens = json::array();
    for (const auto& x : q) gens.push_back(vec_to_json(x));
    chain.push_back(gens);
  }
  return with_header("filtration", {{"chain", chain}});
}

// Indented JSON with arrays of scalars kept on one line.
inline void write_pretty(std::ostream& out, const json& j, int indent = 0) {
  auto scalar_array = [](const json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_primitive(); });
  };
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out << pad << json(it.key()).dump() << ": ";
      write_pretty(out, it.value(), indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << '}';
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_pretty(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << ']';
  } else if (j.is_array()) {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
    out << ']';
  } else {
    out << j.dump();
  }
}

inline std::string pretty(const json& j) {
  std::ostringstream out;
  write_pretty(out, j);
  return out.str() + "\n";
}

// ---- reading ----

class Reader {
 public:
  static const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "/" + key, "missing field");
    return *it;
  }

  static Int integer(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
      Int x;
      if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError(path, "string is not an integer");
      return x;
    }
    throw ParseError(path, "expected an integer");
  }

  static long small(const json& j, const std::string& path, long lo, long hi) {
    Int x = integer(j, path);
    if (x < lo || x > hi) throw ParseError(path, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x.get_si();
  }

  static const json& array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    if (size && j.size() != *size)
      throw ParseError(path, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
    return j;
  }

  static Vec vec(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    array(j, path, size);
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], path + "/" + std::to_string(i)));
    return v;
  }

  static IntMatrix matrix(const json& j, const std::string& path, std::size_t rows, std::optional<std::size_t> cols = std::nullopt) {
    array(j, path, rows);
    std::vector<Vec> r;
    for (std::size_t i = 0; i < rows; ++i) {
      r.push_back(vec(j[i], path + "/" + std::to_string(i), cols));
      if (!cols) cols = r.back().size();
    }
    return IntMatrix::from_rows(r, cols.value_or(0));
  }

  static std::vector<int> labels(const json& j, const std::string& path, int bound, std::optional<std::size_t> size = std::nullopt) {
    array(j, path, size);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<int>(small(j[i], path + "/" + std::to_string(i), 0, bound - 1)));
    return out;
  }

  static FiniteGroup group(const json& j, const std::string& path) {
    array(j, path);
    const std::size_t n = j.size();
    if (n == 0) throw ParseError(path, "multiplication table is empty");
    std::vector<std::vector<int>> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(labels(j[i], path + "/" + std::to_string(i), static_cast<int>(n), n));
    return wrap(path, [&] { return FiniteGroup(t); });
  }

  static FgAbelianGroup presentation(const json& j, const std::string& path) {
    std::size_t n = static_cast<std::size_t>(small(field(j, path, "generators"), path + "/generators", 0, 1 << 20));
    IntMatrix rel = matrix(field(j, path, "relations"), path + "/relations", n);
    if (n == 0) rel = IntMatrix(0, 0);
    return wrap(path, [&] { return FgAbelianGroup(n, rel); });
  }

  static std::vector<IntMatrix> actions(const json& j, const std::string& path, const FiniteGroup& g, std::size_t dim) {
    array(j, path, static_cast<std::size_t>(g.order()));
    std::vector<IntMatrix> out;
    for (int x = 0; x < g.order(); ++x) out.push_back(matrix(j[static_cast<std::size_t>(x)], path + "/" + std::to_string(x), dim, dim));
    return out;
  }

  template <class F>
  static auto wrap(const std::string& path, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(path, e.what());
    }
  }
};

inline void check_header(const json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("", "document must be an object");
  std::string v = j.contains("version") && j["version"].is_string() ? j["version"].get<std::string>() : "";
  if (v != kVersion) throw ParseError("/version", std::string("expected \"") + kVersion + "\"");
  std::string k = j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (k != kind) throw ParseError("/kind", "expected \"" + kind + "\", found \"" + k + "\"");
}

inline std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw ParseError("/kind", "missing field");
  return j["kind"].get<std::string>();
}

inline FiniteGroup parse_group(const json& j) {
  check_header(j, "group");
  return Reader::group(Reader::field(j, "", "table"), "/table");
}

inline GModule parse_gmodule_payload(const json& j, const std::string& path, const FiniteGroup& g) {
  FgAbelianGroup m = Reader::presentation(j, path);
  auto act = Reader::actions(Reader::field(j, path, "action"), path + "/action", g, m.generator_count());
  return Reader::wrap(path + "/action", [&] { return GModule(g, m, act); });
}

inline GModule parse_gmodule(const json& j) {
  check_header(j, "gmodule");
  FiniteGroup g = Reader::group(Reader::field(j, "", "group"), "/group");
  return parse_gmodule_payload(j, "", g);
}

inline TorusDatum parse_torus(const json& j) {
  check_header(j, "torus");
  const json& name = Reader::field(j, "", "name");
  if (!name.is_string()) throw ParseError("/name", "expected a string");
  FiniteGroup g = Reader::group(Reader::field(j, "", "group"), "/group");
  std::size_t r = static_cast<std::size_t>(Reader::small(Reader::field(j, "", "cochar_rank"), "/cochar_rank", 0, 1 << 10));
  auto act = Reader::actions(Reader::field(j, "", "action"), "/action", g, r);
  GModule x = Reader::wrap("/action", [&] { return GModule::lattice(g, act); });
  std::optional<AmbientDatum> amb;
  if (j.contains("ambient")) {
    const json& a = j["ambient"];
    FiniteGroup big = Reader::group(Reader::field(a, "/ambient", "group"), "/ambient/group");
    auto emb = Reader::labels(Reader::field(a, "/ambient", "embedding"), "/ambient/embedding", big.order(),
                              static_cast<std::size_t>(g.order()));
    int phi = static_cast<int>(Reader::small(Reader::field(a, "/ambient", "frobenius"), "/ambient/frobenius", 0, big.order() - 1));
    amb = AmbientDatum{big, emb, phi};
  }
  std::optional<IntMatrix> fr;
  if (j.contains("frobenius_matrix")) fr = Reader::matrix(j["frobenius_matrix"], "/frobenius_matrix", r, r);
  std::optional<InducedFrom> ind;
  if (j.contains("induced_from")) {
    const json& a = j["induced_from"];
    auto mem = Reader::labels(Reader::field(a, "/induced_from", "members"), "/induced_from/members", g.order());
    SubgroupDatum h = Reader::wrap("/induced_from/members", [&] { return SubgroupDatum(g, mem); });
    if (r % static_cast<std::size_t>(h.index()) != 0) throw ParseError("/induced_from", "rank is not a multiple of the index");
    std::size_t d = r / static_cast<std::size_t>(h.index());
    FiniteGroup hg = h.as_group();
    auto hact = Reader::actions(Reader::field(a, "/induced_from", "action"), "/induced_from/action", hg, d);
    ind = InducedFrom{h.members(), Reader::wrap("/induced_from/action", [&] { return GModule::lattice(hg, hact); })};
  }
  return Reader::wrap("", [&] { return make_torus(name.get<std::string>(), x, amb, fr, ind); });
}

inline ClassFormationDatum parse_formation(const json& j) {
  check_header(j, "formation");
  const json& name = Reader::field(j, "", "name");
  if (!name.is_string()) throw ParseError("/name", "expected a string");
  FiniteGroup g = Reader::group(Reader::field(j, "", "group"), "/group");
  FgAbelianGroup m = Reader::presentation(Reader::field(j, "", "module"), "/module");
  const std::size_t d = m.generator_count(), n = static_cast<std::size_t>(g.order());
  auto act = Reader::actions(Reader::field(j, "", "action"), "/action", g, d);
  GModule a = Reader::wrap("/action", [&] { return GModule(g, m, act); });
  const json& cj = Reader::array(Reader::field(j, "", "cocycle"), "/cocycle", n);
  std::vector<Vec> u;
  for (std::size_t x = 0; x < n; ++x) {
    std::string px = "/cocycle/" + std::to_string(x);
    Reader::array(cj[x], px, n);
    for (std::size_t y = 0; y < n; ++y) u.push_back(Reader::vec(cj[x][y], px + "/" + std::to_string(y), d));
  }
  std::vector<Vec> off;
  if (j.contains("offsets")) {
    Reader::array(j["offsets"], "/offsets", n);
    for (std::size_t x = 0; x < n; ++x) off.push_back(Reader::vec(j["offsets"][x], "/offsets/" + std::to_string(x), d));
  }
  std::optional<FrobeniusTwist> tw;
  if (j.contains("frobenius")) {
    const json& f = j["frobenius"];
    FrobeniusTwist t;
    t.on_group = Reader::labels(Reader::field(f, "/frobenius", "on_group"), "/frobenius/on_group", g.order(), n);
    t.on_kernel = Reader::matrix(Reader::field(f, "/frobenius", "on_kernel"), "/frobenius/on_kernel", d, d);
    if (d == 0) t.on_kernel = IntMatrix(0, 0);
    const json& c = Reader::array(Reader::field(f, "/frobenius", "correction"), "/frobenius/correction", n);
    for (std::size_t x = 0; x < n; ++x) t.correction.push_back(Reader::vec(c[x], "/frobenius/correction/" + std::to_string(x), d));
    tw = t;
  }
  ExtensionGroup e = Reader::wrap("/cocycle", [&] { return ExtensionGroup(a, u, tw, off); });
  return make_formation(name.get<std::string>(), e);
}

inline FrobeniusModule parse_frobmodule_payload(const json& j, const std::string& path) {
  FgAbelianGroup p = Reader::presentation(j, path);
  IntMatrix f = Reader::matrix(Reader::field(j, path, "frobenius"), path + "/frobenius", p.generator_count(), p.generator_count());
  if (p.generator_count() == 0) f = IntMatrix(0, 0);
  return Reader::wrap(path + "/frobenius", [&] { return FrobeniusModule(p, f); });
}

inline FrobeniusModule parse_frobmodule(const json& j) {
  check_header(j, "frobmodule");
  return parse_frobmodule_payload(j, "");
}

inline FiltrationDatum parse_filtration(const json& j, const FrobeniusModule& base) {
  check_header(j, "filtration");
  const json& c = Reader::array(Reader::field(j, "", "chain"), "/chain");
  std::vector<std::vector<Vec>> chain;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::string pi = "/chain/" + std::to_string(i);
    Reader::array(c[i], pi);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < c[i].size(); ++k) gens.push_back(Reader::vec(c[i][k], pi + "/" + std::to_string(k), base.group().generator_count()));
    chain.push_back(gens);
  }
  return Reader::wrap("/chain", [&] { return FiltrationDatum(base, chain); });
}

inline json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("", "cannot open " + file);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
}

// ---- structural equality ----

inline bool same(const GModule& a, const GModule& b) {
  return a.group() == b.group() && a.module().same_presentation(b.module()) && a.actions() == b.actions();
}

inline bool same(const TorusDatum& a, const TorusDatum& b) {
  auto amb = [](const AmbientDatum& x, const AmbientDatum& y) {
    return x.group == y.group && x.embedding == y.embedding && x.frobenius == y.frobenius;
  };
  auto ind = [](const InducedFrom& x, const InducedFrom& y) { return x.members == y.members && same(x.module, y.module); };
  return a.name == b.name && same(a.cochar, b.cochar) && a.ambient.has_value() == b.ambient.has_value() &&
         (!a.ambient || amb(*a.ambient, *b.ambient)) && a.frobenius == b.frobenius &&
         a.induced_from.has_value() == b.induced_from.has_value() && (!a.induced_from || ind(*a.induced_from, *b.induced_from));
}

inline bool same(const ClassFormationDatum& a, const ClassFormationDatum& b) {
  const auto &x = a.ext, &y = b.ext;
  return a.name == b.name && same(x.kernel(), y.kernel()) && x.cocycle_table() == y.cocycle_table() && x.offsets() == y.offsets() &&
         x.twist().on_group == y.twist().on_group && x.twist().on_kernel == y.twist().on_kernel &&
         x.twist().correction == y.twist().correction;
}

inline bool same(const FrobeniusModule& a, const FrobeniusModule& b) {
  return a.group().same_presentation(b.group()) && a.matrix() == b.matrix();
}

inline bool same(const FiltrationDatum& a, const FiltrationDatum& b) { return same(a.base(), b.base()) && a.chain() == b.chain(); }

}  // namespace torlang::io
