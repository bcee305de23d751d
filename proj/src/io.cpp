#include "jumploci/io.hpp"

#include <fstream>
#include <sstream>

#include "jumploci/errors.hpp"

namespace jumploci {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing \"" + key + "\"");
  return *it;
}

std::size_t as_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

long long as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

const std::string& as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

void expect_type(const Json& j, const std::string& type) {
  const std::string t = document_type(j);
  if (t != type) fail("document", "expected type \"" + type + "\", got \"" + t + "\"");
}

std::vector<std::size_t> size_list(const Json& j, const std::string& where) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < as_array(j, where).size(); ++k)
    out.push_back(as_size(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::vector<long long>> int_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                               const std::string& where) {
  if (as_array(j, where).size() != rows)
    fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::vector<std::vector<long long>> out;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    if (as_array(j[r], w).size() != cols)
      fail(w, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[r].size()));
    std::vector<long long> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(as_int(j[r][c], w + "[" + std::to_string(c) + "]"));
    out.push_back(std::move(row));
  }
  return out;
}

Poly poly_from(const RingPtr& ring, const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Poly::from_int(ring, j.get<long long>());
  const std::string& s = as_string(j, where);
  try {
    return parse_poly(ring, s);
  } catch (const ParseError& e) {
    throw ParseError(where + " \"" + s + "\": " + e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    Json j = parse_json(ss.str());
    document_type(j);
    return j;
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string document_type(const Json& doc) { return as_string(member(doc, "type", "document"), "document.type"); }

Json field_to_json(const Field& f) { return f.name(); }

FieldPtr field_from_json(const Json& j) {
  try {
    return parse_field(as_string(j, "field"));
  } catch (const PreconditionError& e) {
    fail("field", e.what());
  }
}

Json ring_to_json(const RingPtr& ring) {
  Json j;
  j["field"] = field_to_json(ring->field());
  j["variables"] = ring->variables();
  j["laurent"] = ring->laurent();
  j["order"] = ring->order() == MonomialOrder::grlex ? "grlex" : "lex";
  return j;
}

RingPtr ring_from_json(const Json& j) {
  const FieldPtr f = field_from_json(member(j, "field", "ring"));
  std::vector<std::string> vars;
  const Json& v = as_array(member(j, "variables", "ring"), "ring.variables");
  for (std::size_t k = 0; k < v.size(); ++k) vars.push_back(as_string(v[k], "ring.variables"));
  bool laurent = false;
  if (j.contains("laurent")) {
    if (!j["laurent"].is_boolean()) fail("ring.laurent", "expected a boolean");
    laurent = j["laurent"].get<bool>();
  }
  MonomialOrder order = MonomialOrder::grlex;
  if (j.contains("order")) {
    const std::string& o = as_string(j["order"], "ring.order");
    if (o == "lex")
      order = MonomialOrder::lex;
    else if (o != "grlex")
      fail("ring.order", "unknown order \"" + o + "\"");
  }
  try {
    return Ring::make(f, vars, laurent, order);
  } catch (const PreconditionError& e) {
    fail("ring", e.what());
  }
}

std::string format_scalar(const Field& f, const Scalar& s) { return f.format(s); }

Scalar parse_scalar(const FieldPtr& f, const std::string& text) {
  const RingPtr k = Ring::make(f, {}, false);
  const Poly p = parse_poly(k, text);
  return p.constant_coefficient();
}

Json matrix_to_json(const PolyMatrix& m) {
  Json j = Json::array();
  if (m.cols() == 0) return j;
  for (const auto& row : m.to_strings()) j.push_back(row);
  return j;
}

PolyMatrix matrix_from_json(const Json& j, const RingPtr& ring, std::size_t rows, std::size_t cols) {
  PolyMatrix m(ring, rows, cols);
  as_array(j, "matrix");
  if (j.empty() && (cols == 0 || rows == 0)) return m;
  if (j.size() != rows) fail("matrix", "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string w = "matrix row " + std::to_string(r + 1);
    if (as_array(j[r], w).size() != cols)
      fail(w, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[r].size()));
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = poly_from(ring, j[r][c], w + " entry " + std::to_string(c + 1));
  }
  return m;
}

Json to_json(const FreeChainComplex& e) {
  Json j;
  j["type"] = "free-complex";
  j["ring"] = ring_to_json(e.ring());
  j["ranks"] = e.ranks();
  Json ds = Json::array();
  for (const auto& d : e.differentials()) ds.push_back(matrix_to_json(d));
  j["differentials"] = ds;
  return j;
}

Json to_json(const PresentedChainComplex& e) {
  Json j;
  j["type"] = "presented-complex";
  j["ring"] = ring_to_json(e.ring());
  Json terms = Json::array();
  for (const auto& t : e.terms()) {
    Json tj;
    tj["generators"] = t.generators;
    tj["relations"] = matrix_to_json(t.relations);
    terms.push_back(tj);
  }
  j["terms"] = terms;
  Json ds = Json::array();
  for (const auto& d : e.differentials()) ds.push_back(matrix_to_json(d));
  j["differentials"] = ds;
  return j;
}

namespace {

std::vector<PolyMatrix> differentials_from(const Json& j, const RingPtr& ring, const std::vector<std::size_t>& ranks) {
  const Json& ds = as_array(member(j, "differentials", "complex"), "complex.differentials");
  const std::size_t expect = ranks.empty() ? 0 : ranks.size() - 1;
  if (ds.size() != expect)
    fail("complex.differentials", "expected " + std::to_string(expect) + " matrices, got " + std::to_string(ds.size()));
  std::vector<PolyMatrix> out;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    try {
      out.push_back(matrix_from_json(ds[k], ring, ranks[k], ranks[k + 1]));
    } catch (const ParseError& e) {
      throw ParseError("complex.differentials[" + std::to_string(k) + "] (d_" + std::to_string(k + 1) + "): " +
                       e.what());
    }
  }
  return out;
}

std::size_t relation_count(const Json& rel) {
  if (!rel.is_array() || rel.empty()) return 0;
  if (!rel[0].is_array()) fail("relations", "expected an array of rows");
  return rel[0].size();
}

}  // namespace

FreeChainComplex free_complex_from_json(const Json& j) {
  expect_type(j, "free-complex");
  const RingPtr ring = ring_from_json(member(j, "ring", "free-complex"));
  const auto ranks = size_list(member(j, "ranks", "free-complex"), "free-complex.ranks");
  return FreeChainComplex(ring, ranks, differentials_from(j, ring, ranks));
}

PresentedChainComplex presented_complex_from_json(const Json& j) {
  if (document_type(j) == "free-complex") return PresentedChainComplex::from_free(free_complex_from_json(j));
  expect_type(j, "presented-complex");
  const RingPtr ring = ring_from_json(member(j, "ring", "presented-complex"));
  const Json& tj = as_array(member(j, "terms", "presented-complex"), "presented-complex.terms");
  std::vector<ModulePresentation> terms;
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < tj.size(); ++k) {
    const std::string w = "presented-complex.terms[" + std::to_string(k) + "]";
    const std::size_t g = as_size(member(tj[k], "generators", w), w + ".generators");
    ranks.push_back(g);
    if (!tj[k].contains("relations")) {
      terms.emplace_back(ring, g);
      continue;
    }
    const Json& rel = tj[k]["relations"];
    try {
      terms.emplace_back(ring, g, matrix_from_json(rel, ring, g, relation_count(rel)));
    } catch (const ParseError& e) {
      throw ParseError(w + ".relations: " + e.what());
    }
  }
  return PresentedChainComplex(ring, std::move(terms), differentials_from(j, ring, ranks));
}

Json to_json(const GradedAlgebra& a) {
  Json j;
  j["type"] = "cga";
  j["field"] = field_to_json(a.field());
  j["dims"] = a.dims();
  Json mult = Json::array();
  for (const auto& [key, value] : a.entries()) {
    const auto& [i, jj, x, y] = key;
    Json e;
    e["i"] = i;
    e["j"] = jj;
    e["a"] = x;
    e["b"] = y;
    Json v = Json::array();
    for (const auto& s : value) v.push_back(format_scalar(a.field(), s));
    e["value"] = v;
    mult.push_back(e);
  }
  j["mult"] = mult;
  return j;
}

GradedAlgebra cga_from_json(const Json& j) {
  expect_type(j, "cga");
  const FieldPtr f = field_from_json(member(j, "field", "cga"));
  const auto dims = size_list(member(j, "dims", "cga"), "cga.dims");
  if (dims.empty() || dims[0] != 1) fail("cga.dims", "dims[0] must be 1 (connected algebra)");
  GradedAlgebra a(f, dims);
  if (!j.contains("mult")) return a;
  const Json& mult = as_array(j["mult"], "cga.mult");
  for (std::size_t k = 0; k < mult.size(); ++k) {
    const std::string w = "cga.mult[" + std::to_string(k) + "]";
    const long long i = as_int(member(mult[k], "i", w), w + ".i");
    const long long jj = as_int(member(mult[k], "j", w), w + ".j");
    const std::size_t x = as_size(member(mult[k], "a", w), w + ".a");
    const std::size_t y = as_size(member(mult[k], "b", w), w + ".b");
    const Json& v = as_array(member(mult[k], "value", w), w + ".value");
    Vec value;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c].is_number_integer())
        value.push_back(f->from_int(v[c].get<long long>()));
      else
        try {
          value.push_back(parse_scalar(f, as_string(v[c], w + ".value")));
        } catch (const ParseError& e) {
          fail(w + ".value[" + std::to_string(c) + "]", e.what());
        }
    }
    try {
      a.set_product(static_cast<int>(i), static_cast<int>(jj), x, y, std::move(value));
    } catch (const PreconditionError& e) {
      fail(w, e.what());
    }
  }
  return a;
}

Json to_json(const FinAbGroup& g) {
  Json j;
  j["type"] = "group";
  j["rank"] = g.rank;
  j["torsion"] = g.torsion;
  return j;
}

FinAbGroup group_from_json(const Json& j) {
  if (j.contains("type")) expect_type(j, "group");
  FinAbGroup g;
  g.rank = as_size(member(j, "rank", "group"), "group.rank");
  if (j.contains("torsion")) {
    const Json& t = as_array(j["torsion"], "group.torsion");
    for (std::size_t k = 0; k < t.size(); ++k) g.torsion.push_back(as_int(t[k], "group.torsion"));
  }
  return g;
}

Json to_json(const NuData& nu) {
  Json j;
  j["type"] = "nu";
  j["source_rank"] = nu.source_rank;
  Json target = to_json(nu.target);
  target.erase("type");
  j["target"] = target;
  j["free"] = nu.free;
  j["torsion"] = nu.torsion;
  return j;
}

NuData nu_from_json(const Json& j) {
  expect_type(j, "nu");
  NuData nu;
  nu.source_rank = as_size(member(j, "source_rank", "nu"), "nu.source_rank");
  if (j.contains("target")) {
    nu.target = group_from_json(j["target"]);
  } else {
    nu.target.rank = as_array(member(j, "free", "nu"), "nu.free").size();
  }
  nu.free = int_matrix(member(j, "free", "nu"), nu.target.rank, nu.source_rank, "nu.free");
  if (j.contains("torsion"))
    nu.torsion = int_matrix(j["torsion"], nu.target.torsion.size(), nu.source_rank, "nu.torsion");
  else if (!nu.target.torsion.empty())
    fail("nu", "missing \"torsion\" block for a target with torsion");
  return nu;
}

Json to_json(const GroupPresentation& p) {
  Json j;
  j["type"] = "presentation";
  j["generators"] = p.generators();
  Json rel = Json::array();
  for (const auto& r : p.relators()) rel.push_back(p.format(r));
  j["relators"] = rel;
  return j;
}

GroupPresentation presentation_from_json(const Json& j) {
  expect_type(j, "presentation");
  std::vector<std::string> gens, rels;
  const Json& g = as_array(member(j, "generators", "presentation"), "presentation.generators");
  for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(as_string(g[k], "presentation.generators"));
  if (j.contains("relators")) {
    const Json& r = as_array(j["relators"], "presentation.relators");
    for (std::size_t k = 0; k < r.size(); ++k) rels.push_back(as_string(r[k], "presentation.relators"));
  }
  try {
    return GroupPresentation::parse(gens, rels);
  } catch (const PreconditionError& e) {
    fail("presentation", e.what());
  }
}

Json to_json(const ModulePresentation& p) {
  Json j;
  j["type"] = "module";
  j["ring"] = ring_to_json(p.ring);
  j["generators"] = p.generators;
  j["relations"] = matrix_to_json(p.relations);
  return j;
}

ModulePresentation module_from_json(const Json& j) {
  expect_type(j, "module");
  const RingPtr ring = ring_from_json(member(j, "ring", "module"));
  const std::size_t g = as_size(member(j, "generators", "module"), "module.generators");
  const Json& rel = j.contains("relations") ? j["relations"] : Json::array();
  return ModulePresentation(ring, g, matrix_from_json(rel, ring, g, relation_count(rel)));
}

Json to_json(const Ideal& i) {
  Json j;
  j["type"] = "ideal";
  j["ring"] = ring_to_json(i.ring());
  j["generators"] = i.to_strings();
  return j;
}

Ideal ideal_from_json(const Json& j) {
  expect_type(j, "ideal");
  const RingPtr ring = ring_from_json(member(j, "ring", "ideal"));
  std::vector<Poly> gens;
  const Json& g = as_array(member(j, "generators", "ideal"), "ideal.generators");
  for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(poly_from(ring, g[k], "ideal.generators"));
  return Ideal(ring, gens);
}

Json to_json(const PointSet& s) {
  Json j;
  j["type"] = "points";
  j["field"] = field_to_json(s.field());
  j["dimension"] = s.dim();
  j["torus"] = s.torus();
  j["count"] = s.size();
  Json pts = Json::array();
  for (const auto& p : s.points()) {
    Json c = Json::array();
    for (const auto& x : p) c.push_back(format_scalar(s.field(), x));
    pts.push_back(c);
  }
  j["points"] = pts;
  return j;
}

PointSet points_from_json(const Json& j) {
  expect_type(j, "points");
  const FieldPtr f = field_from_json(member(j, "field", "points"));
  const std::size_t dim = as_size(member(j, "dimension", "points"), "points.dimension");
  const bool torus = j.contains("torus") && j["torus"].is_boolean() && j["torus"].get<bool>();
  PointSet s(f, dim, torus);
  const Json& pts = as_array(member(j, "points", "points"), "points.points");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::string w = "points.points[" + std::to_string(k) + "]";
    if (as_array(pts[k], w).size() != dim) fail(w, "expected " + std::to_string(dim) + " coordinates");
    Coords c;
    for (const auto& x : pts[k]) c.push_back(parse_scalar(f, as_string(x, w)));
    s.insert(std::move(c));
  }
  return s;
}

FreeChainComplex change_field(const FreeChainComplex& e, const FieldPtr& field) {
  if (*e.ring()->field_ptr() == *field) return e;
  const Embedding emb(e.ring()->field_ptr(), field);
  const RingPtr target = e.ring()->with_field(field);
  std::vector<PolyMatrix> ds;
  for (const auto& d : e.differentials()) ds.push_back(d.mapped(target, emb));
  return FreeChainComplex(target, e.ranks(), std::move(ds));
}

PresentedChainComplex change_field(const PresentedChainComplex& e, const FieldPtr& field) {
  if (*e.ring()->field_ptr() == *field) return e;
  const Embedding emb(e.ring()->field_ptr(), field);
  const RingPtr target = e.ring()->with_field(field);
  std::vector<ModulePresentation> terms;
  for (const auto& t : e.terms()) terms.emplace_back(target, t.generators, t.relations.mapped(target, emb));
  std::vector<PolyMatrix> ds;
  for (const auto& d : e.differentials()) ds.push_back(d.mapped(target, emb));
  return PresentedChainComplex(target, std::move(terms), std::move(ds));
}

GradedAlgebra change_field(const GradedAlgebra& a, const FieldPtr& field) {
  if (a.field() == *field) return a;
  const Embedding emb(a.field_ptr(), field);
  GradedAlgebra out(field, a.dims());
  for (const auto& [key, value] : a.entries()) {
    const auto& [i, j, x, y] = key;
    Vec v;
    for (const auto& s : value) v.push_back(emb(s));
    out.set_product(i, j, x, y, std::move(v));
  }
  return out;
}

}  // namespace jumploci
