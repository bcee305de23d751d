#include "jumploci/cli.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "jumploci/errors.hpp"

namespace jumploci {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"resonance",  "jumploci", "supports", "e1",
                                              "verify-cvres", "finiteness", "alexander", "charvar",
                                              "genres-experiment", "validate"};
  return names;
}

namespace {

struct Context {
  explicit Context(const CommandRequest& r) : req(r) {}
  const CommandRequest& req;
  Json results = Json::object();
  std::vector<std::string> provenance;
  int exit_code = exit_ok;
};

const std::string& input(const CommandRequest& req, const std::string& role) {
  auto it = req.inputs.find(role);
  if (it == req.inputs.end()) throw PreconditionError("missing input --" + role);
  return it->second;
}

bool has_input(const CommandRequest& req, const std::string& role) { return req.inputs.count(role) > 0; }

std::int64_t checked_power(std::int64_t q, int e) {
  std::int64_t out = 1;
  for (int k = 0; k < e; ++k) {
    if (out > (std::int64_t{1} << 40) / q) throw ScopeError("field size q^e is too large");
    out *= q;
  }
  return out;
}

// The field points are enumerated over: F_{q^e}.
FieldPtr point_field(const CommandRequest& req, const Field& base) {
  if (req.ext < 1) throw PreconditionError("--ext must be at least 1");
  std::int64_t q = 0;
  if (req.q) {
    prime_power(*req.q);
    q = *req.q;
  } else if (base.is_finite()) {
    q = base.size();
  } else {
    throw PreconditionError("the input is over Q; pass --q to choose a finite field");
  }
  const FieldPtr f = Field::galois(checked_power(q, req.ext));
  if (base.is_finite() && !Embedding::exists(base, *f))
    throw PreconditionError(base.name() + " does not embed into " + f->name());
  return f;
}

// The field computations run over: the input field, or F_p when the input
// is over Q and a finite field was requested.
FieldPtr compute_field(const CommandRequest& req, const FieldPtr& base) {
  if (base->is_finite() || !req.q) return base;
  return Field::prime(prime_power(*req.q).first);
}

void indices_nonnegative(const CommandRequest& req) {
  if (req.i < 0) throw PreconditionError("--i must be non-negative");
  if (req.d < 0) throw PreconditionError("--d must be non-negative");
  if (req.k && *req.k < 0) throw PreconditionError("--k must be non-negative");
}

Json field_info(const FieldPtr& compute, const FieldPtr& points) {
  return Json{{"coefficients", compute->name()}, {"points", points->name()}};
}

GradedAlgebra load_cga(const CommandRequest& req, FieldPtr* points) {
  const GradedAlgebra raw = cga_from_json(read_document(input(req, "cga")));
  const GradedAlgebra A = change_field(raw, compute_field(req, raw.field_ptr()));
  const CgaVerdict v = validate_cga(A);
  if (!v.valid) throw PreconditionError("invalid cga (" + v.rule + "): " + v.message);
  if (points) *points = point_field(req, A.field());
  return A;
}

NuData load_nu(const CommandRequest& req, std::size_t b1) {
  NuData nu = has_input(req, "nu") ? nu_from_json(read_document(input(req, "nu"))) : NuData::identity(b1);
  if (has_input(req, "group") && has_input(req, "nu")) {
    const FinAbGroup g = group_from_json(read_document(input(req, "group")));
    if (!(g == nu.target)) throw PreconditionError("the group document differs from the nu target");
  }
  nu.validate();
  return nu;
}

PresentedChainComplex load_complex(const CommandRequest& req, FieldPtr* points) {
  const PresentedChainComplex raw = presented_complex_from_json(read_document(input(req, "complex")));
  const PresentedChainComplex e = change_field(raw, compute_field(req, raw.ring()->field_ptr()));
  if (points) *points = point_field(req, e.ring()->field());
  return e;
}

Json gr_json(const GrRingDescriptor& g) {
  Json j;
  j["group"] = g.group.describe();
  j["ring"] = g.describe();
  j["specm_dimension"] = g.specm_dimension();
  j["nilpotents"] = g.has_nilpotents();
  return j;
}

void note_nilpotents(Context& c, const GrRingDescriptor& g) {
  if (g.has_nilpotents())
    c.provenance.push_back(
        "the associated graded ring has nilpotents (char k divides a torsion factor); they are discarded, which does "
        "not change maximal spectra");
}

void cmd_resonance(Context& c) {
  FieldPtr F;
  const GradedAlgebra A = load_cga(c.req, &F);
  const PointSet pts = resonance_points(A, static_cast<int>(c.req.i), c.req.d, F, c.req.enumeration);
  const Ideal I = resonance_ideal(A, static_cast<int>(c.req.i), c.req.d);
  c.results["field"] = field_info(A.field_ptr(), F);
  c.results["dims"] = A.dims();
  c.results["resonance"] = to_json(pts);
  c.results["is_cone"] = is_cone(pts);
  c.results["ideal"] = to_json(I);
  const bool agree = zero_locus_points(I, F, false, c.req.enumeration) == pts;
  c.results["ideal_points_agree"] = agree;
  if (!agree) c.exit_code = exit_verdict;
  c.provenance.push_back("points: dim H^i(A, a) from ranks of the Aomoto differentials at each square-zero a");
  c.provenance.push_back("ideal: coordinates of a^2 plus minors of delta^{i-1}(a) (+) delta^i(a) for symbolic a");
}

void cmd_jumploci(Context& c) {
  FieldPtr F;
  const PresentedChainComplex e = load_complex(c.req, &F);
  const int i = static_cast<int>(c.req.i);
  c.results["field"] = field_info(e.ring()->field_ptr(), F);
  c.results["free"] = e.is_free();
  if (e.is_free()) {
    const FreeChainComplex f = e.as_free();
    const PointSet pts = jump_locus_points(f, i, c.req.d, F, c.req.torus, c.req.enumeration);
    const Ideal I = jump_locus_ideal(f, i, c.req.d);
    c.results["jump_locus"] = to_json(pts);
    c.results["ideal"] = to_json(I);
    const bool agree = zero_locus_points(I, F, c.req.torus, c.req.enumeration) == pts;
    c.results["ideal_points_agree"] = agree;
    if (!agree) c.exit_code = exit_verdict;
    c.provenance.push_back(
        "for free complexes V^i_d is cut out by minors of size c_i - d + 1 of d_{i+1} (+) d_i; the points are "
        "recomputed independently from ranks at each point");
  } else {
    c.results["jump_locus"] = to_json(jump_locus_points(e, i, c.req.d, F, c.req.torus, c.req.enumeration));
    c.results["ideal"] = nullptr;
    c.provenance.push_back(
        "non-free terms: V^i_d is computed pointwise from the specialized cokernels; the locus need not be closed");
  }
}

void cmd_supports(Context& c) {
  FieldPtr F;
  const PresentedChainComplex e = load_complex(c.req, &F);
  const int i = static_cast<int>(c.req.i);
  const ModulePresentation h = homology_presentation(e, i, c.req.limits);
  c.results["field"] = field_info(e.ring()->field_ptr(), F);
  c.results["homology"] = to_json(h);
  c.results["fitting_ideal"] = to_json(fitting_ideal(h, c.req.d - 1));
  c.results["support"] = to_json(support_points(e, i, c.req.d, F, c.req.torus, c.req.limits, c.req.enumeration));
  c.provenance.push_back("W^i_d is the zero set of Fitt_{d-1} of a presentation of H_i");
  if (!c.req.compare_v) return;
  Json cmp = Json::array();
  bool all = true;
  PointSet v(F, e.ring()->nvars(), c.req.torus), w(F, e.ring()->nvars(), c.req.torus);
  for (int t = 0; t <= i; ++t) {
    v = v.united(jump_locus_points(e, t, 1, F, c.req.torus, c.req.enumeration));
    w = w.united(support_points(e, t, 1, F, c.req.torus, c.req.limits, c.req.enumeration));
    const bool agree = v == w;
    all = all && agree;
    cmp.push_back(Json{{"truncation", t}, {"union_V", to_json(v)}, {"union_W", to_json(w)}, {"agree", agree}});
  }
  c.results["compare_v"] = cmp;
  c.results["compare_v_agree"] = all;
  if (e.is_free()) {
    c.provenance.push_back(
        "for complexes of free modules, unions of V^j_1 and W^j_1 over j <= i coincide; both sides are printed");
    if (!all) c.exit_code = exit_verdict;
  } else {
    c.provenance.push_back("terms are not free, so the unions of V^j_1 and W^j_1 may differ; both sides are printed");
  }
}

void cmd_e1(Context& c) {
  const GradedAlgebra A = load_cga(c.req, nullptr);
  const NuData nu = load_nu(c.req, A.dim(1));
  const GrRingDescriptor g = gr_ring(nu.target, A.field_ptr());
  const FreeChainComplex e = build_E1(A, nu);
  c.results["gr_ring"] = gr_json(g);
  c.results["nu"] = to_json(nu);
  c.results["E1"] = to_json(e);
  c.results["validated"] = validate_complex(e).valid;
  c.provenance.push_back(
      "E^1_i = S (x) H_i(X, k) with d^1_i = (nu_* (x) id) o comultiplication, the comultiplication being the "
      "transposed cup product");
  note_nilpotents(c, g);
}

void cmd_verify_cvres(Context& c) {
  FieldPtr F;
  const GradedAlgebra A = load_cga(c.req, &F);
  const NuData nu = load_nu(c.req, A.dim(1));
  const CvResReport r = verify_cv_res(A, nu, static_cast<int>(c.req.i), c.req.d, F, c.req.enumeration);
  c.results["field"] = field_info(A.field_ptr(), F);
  c.results["lhs_jump_locus_E1"] = to_json(r.lhs);
  c.results["rhs_pulled_back_resonance"] = to_json(r.rhs);
  c.results["equal"] = r.equal;
  if (!r.equal) {
    c.results["alert"] = "MISMATCH: the jump locus of E^1 differs from the pulled-back resonance variety";
    c.exit_code = exit_verdict;
  }
  c.provenance.push_back(
      "(d^1_i(w))^T = delta^{i-1}(nu_bar^* w), so w is in V^i_d(E^1) exactly when nu_bar^* w is in R^i_d");
  note_nilpotents(c, gr_ring(nu.target, A.field_ptr()));
}

GradedAlgebra finiteness_algebra(const CommandRequest& req, FieldPtr* points) {
  if (has_input(req, "cga")) return load_cga(req, points);
  const GroupPresentation p = presentation_from_json(read_document(input(req, "presentation")));
  const FieldPtr base = req.q ? Field::prime(prime_power(*req.q).first) : nullptr;
  if (!base) throw PreconditionError("--q is required to build the cup-product algebra of a presentation");
  const GradedAlgebra A = quadratic_cup(p, base);
  *points = point_field(req, *base);
  return A;
}

void cmd_finiteness(Context& c) {
  FieldPtr F;
  const GradedAlgebra A = finiteness_algebra(c.req, &F);
  const NuData nu = load_nu(c.req, A.dim(1));
  FinitenessOptions opt;
  opt.limits = c.req.limits;
  opt.enumeration = c.req.enumeration;
  const int k = static_cast<int>(c.req.k.value_or(1));
  const FinitenessReport r = finiteness_test(A, nu, k, F, opt);
  c.results["field"] = field_info(A.field_ptr(), F);
  c.results["k"] = k;
  c.results["hypothesis_holds"] = r.hypothesis_holds;
  c.results["offending"] = to_json(r.offending);
  c.results["symbolic_check"] = r.symbolic;
  if (!r.symbolic_detail.empty()) c.results["symbolic_detail"] = r.symbolic_detail;
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back(Json{{"i", d.i},
                           {"support", to_json(d.support)},
                           {"support_in_origin", d.support_in_origin},
                           {"dimension", d.dimension.describe()}});
  c.results["E2"] = degrees;
  c.results["nilpotents_discarded"] = r.nilpotents_discarded;
  c.results["conclusion"] = r.conclusion;
  c.provenance.push_back(
      "hypothesis: the image of nu_bar^* meets the resonance varieties R^i_1, i <= k, only at 0 (checked at every "
      "point of F^r)");
  c.provenance.push_back(
      "when it holds, E^2 is supported at the origin in degrees <= k, so the completed homology is "
      "finite-dimensional there; the converse fails in general");
  if (r.hypothesis_holds)
    for (const auto& d : r.degrees)
      if (!d.support_in_origin) c.exit_code = exit_verdict;
}

GroupPresentation load_presentation(const CommandRequest& req) {
  return presentation_from_json(read_document(input(req, "presentation")));
}

FieldPtr presentation_field(const CommandRequest& req) {
  return req.q ? Field::prime(prime_power(*req.q).first) : Field::rationals();
}

void cmd_alexander(Context& c) {
  const GroupPresentation p = load_presentation(c.req);
  const NuData nu = load_nu(c.req, p.size());
  const FieldPtr k = presentation_field(c.req);
  const FreeChainComplex e = alexander_complex(p, nu, k);
  const AlexanderInvariant inv = alexander_invariant(p, nu, k, c.req.limits);
  c.results["presentation"] = to_json(p);
  c.results["complex"] = to_json(e);
  c.results["alexander_invariant"] = to_json(inv.presentation);
  c.results["finiteness"] = inv.finiteness.describe();
  c.results["finiteness_method"] = inv.finiteness.method;
  c.provenance.push_back("d_1 = (t^{nu(g)} - 1), d_2 = abelianized Fox Jacobian of the relators");
  c.provenance.push_back("the Alexander invariant is H_1 of this complex as a module over k[Z^r]");
}

void cmd_charvar(Context& c) {
  const GroupPresentation p = load_presentation(c.req);
  const NuData nu = load_nu(c.req, p.size());
  if (!c.req.q) throw PreconditionError("--q is required for characteristic varieties");
  const FieldPtr k = presentation_field(c.req);
  const FieldPtr F = point_field(c.req, *k);
  const int i = static_cast<int>(c.req.i);
  c.results["field"] = field_info(k, F);
  c.results["characteristic_variety"] =
      to_json(characteristic_variety_points(p, nu, i, c.req.d, F, c.req.enumeration));
  c.provenance.push_back("characters rho in (F^x)^r with dim H_i(X, k_rho) >= d, from the Alexander complex");
  if (!c.req.compare_v) return;
  const FreeChainComplex e = alexander_complex(p, nu, k);
  PointSet v(F, nu.target.rank, true), w(F, nu.target.rank, true);
  for (int t = 0; t <= i; ++t) {
    v = v.united(jump_locus_points(e, t, 1, F, true, c.req.enumeration));
    w = w.united(support_points(e, t, 1, F, true, c.req.limits, c.req.enumeration));
  }
  c.results["union_V"] = to_json(v);
  c.results["union_W"] = to_json(w);
  c.results["compare_v_agree"] = v == w;
  if (!(v == w)) c.exit_code = exit_verdict;
}

void cmd_genres(Context& c) {
  if (!c.req.q) throw PreconditionError("--q is required for the sampling experiment");
  const FieldPtr F = Field::galois(checked_power(*c.req.q, c.req.ext));
  const GenericVanishingReport r =
      generic_vanishing_experiment(c.req.shape, static_cast<int>(c.req.i), c.req.trials, F, c.req.seed);
  c.results["field"] = F->name();
  c.results["shape"] = r.shape;
  c.results["i"] = r.i;
  c.results["trials"] = r.trials;
  c.results["seed"] = r.seed;
  c.results["open_count"] = r.open_count;
  c.results["complement_count"] = r.complement_count;
  c.results["nondegenerate_count"] = r.nondegenerate_count;
  c.results["nondegenerate_in_open"] = r.nondegenerate_in_open;
  std::ostringstream frac;
  frac.precision(6);
  frac << std::fixed << r.open_fraction();
  c.results["open_fraction"] = frac.str();
  Json comp = Json::array();
  bool witnesses_ok = true;
  for (const auto& t : r.records)
    if (t.in_complement) {
      Json w = Json::array();
      if (t.witness)
        for (const auto& x : *t.witness) w.push_back(F->format(x));
      comp.push_back(Json{{"trial", t.trial}, {"nondegenerate", t.nondegenerate}, {"witness", w},
                          {"witness_verified", t.witness_verified}});
      witnesses_ok = witnesses_ok && t.witness_verified;
    }
  c.results["complement_trials"] = comp;
  Json refs = Json::array();
  for (const auto& ref : r.references) {
    refs.push_back(Json{{"name", ref.name},
                        {"in_complement", ref.in_complement},
                        {"resonance_size", ref.resonance_size},
                        {"recomputation_agrees", ref.recomputation_agrees}});
    witnesses_ok = witnesses_ok && ref.recomputation_agrees;
  }
  c.results["references"] = refs;
  c.results["witnesses_verified"] = witnesses_ok;
  if (!witnesses_ok) c.exit_code = exit_verdict;
  c.provenance.push_back(
      "U^i_B = algebras with no nonzero a in R^i_1; resonance varieties are closed cones, so this set is open in the "
      "parameter space");
  c.provenance.push_back("classification by exhaustive enumeration of A^1(F) for each sampled algebra");
}

void cmd_validate(Context& c) {
  Json verdicts = Json::array();
  bool all = true;
  auto record = [&](const std::string& role, bool valid, Json detail) {
    Json v{{"input", role}, {"valid", valid}};
    for (auto& [key, val] : detail.items()) v[key] = val;
    verdicts.push_back(v);
    all = all && valid;
  };
  if (c.req.inputs.empty()) throw PreconditionError("validate needs at least one input document");
  for (const auto& [role, path] : c.req.inputs) {
    const Json doc = read_document(path);
    const std::string type = document_type(doc);
    if (type == "cga") {
      const CgaVerdict v = validate_cga(cga_from_json(doc));
      Json detail;
      if (!v.valid) {
        detail["rule"] = v.rule;
        Json w = Json::array();
        for (const auto& [deg, idx] : v.witness) w.push_back(Json{{"degree", deg}, {"index", idx}});
        detail["witness"] = w;
        detail["message"] = v.message;
      }
      record(role, v.valid, detail);
    } else if (type == "free-complex" || type == "presented-complex") {
      const PresentedChainComplex e = presented_complex_from_json(doc);
      const ComplexVerdict v = e.is_free() ? validate_complex(e.as_free()) : validate_complex(e, c.req.limits);
      Json detail;
      detail["conclusive"] = v.conclusive;
      if (!v.valid || !v.conclusive) {
        detail["index"] = v.index;
        detail["row"] = v.row;
        detail["col"] = v.col;
        detail["composite"] = v.composite;
        detail["message"] = v.message;
      }
      record(role, v.valid && v.conclusive, detail);
    } else if (type == "presentation") {
      const GroupPresentation p = presentation_from_json(doc);
      record(role, true, Json{{"generators", p.size()}, {"relators", p.relators().size()}});
    } else if (type == "nu") {
      const NuData nu = nu_from_json(doc);
      try {
        nu.validate();
        record(role, true, Json::object());
      } catch (const PreconditionError& e) {
        record(role, false, Json{{"message", e.what()}});
      }
    } else if (type == "group") {
      const FinAbGroup g = group_from_json(doc);
      try {
        g.validate();
        record(role, true, Json{{"group", g.describe()}});
      } catch (const PreconditionError& e) {
        record(role, false, Json{{"message", e.what()}});
      }
    } else {
      throw ParseError(path + ": unknown document type \"" + type + "\"");
    }
  }
  c.results["verdicts"] = verdicts;
  c.results["valid"] = all;
  if (!all) c.exit_code = exit_verdict;
}

Json request_echo(const CommandRequest& r) {
  Json j;
  Json in = Json::object();
  for (const auto& [role, path] : r.inputs) in[role] = path;
  j["inputs"] = in;
  if (r.q) j["q"] = *r.q;
  j["ext"] = r.ext;
  j["i"] = r.i;
  j["d"] = r.d;
  if (r.k) j["k"] = *r.k;
  j["torus"] = r.torus;
  if (r.command == "genres-experiment") {
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["shape"] = r.shape;
  }
  if (r.compare_v) j["compare_v"] = true;
  return j;
}

}  // namespace

Report run(const CommandRequest& request) {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"resonance", cmd_resonance},   {"jumploci", cmd_jumploci},     {"supports", cmd_supports},
      {"e1", cmd_e1},                 {"verify-cvres", cmd_verify_cvres}, {"finiteness", cmd_finiteness},
      {"alexander", cmd_alexander},   {"charvar", cmd_charvar},       {"genres-experiment", cmd_genres},
      {"validate", cmd_validate}};
  Report rep;
  rep.document["command"] = request.command;
  rep.document["request"] = request_echo(request);
  const auto start = std::chrono::steady_clock::now();
  Context c{request};
  try {
    auto it = table.find(request.command);
    if (it == table.end()) throw PreconditionError("unknown command \"" + request.command + "\"");
    indices_nonnegative(request);
    it->second(c);
    rep.exit_code = c.exit_code;
    rep.document["status"] = c.exit_code == exit_ok ? "ok" : "verdict-failed";
    rep.document["results"] = c.results;
    rep.document["provenance"] = c.provenance;
  } catch (const ParseError& e) {
    rep.exit_code = exit_input;
    rep.document["status"] = "error";
    Json err{{"kind", "parse"}, {"message", e.what()}};
    if (e.position() != std::string::npos) err["position"] = e.position();
    rep.document["error"] = err;
  } catch (const ScopeError& e) {
    rep.exit_code = exit_scope;
    rep.document["status"] = "error";
    rep.document["error"] = Json{{"kind", "scope"}, {"message", e.what()}};
  } catch (const Error& e) {
    rep.exit_code = exit_input;
    rep.document["status"] = "error";
    rep.document["error"] = Json{{"kind", "precondition"}, {"message", e.what()}};
  }
  if (request.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.document["timing_ms"] = ms;
  }
  return rep;
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

bool is_scalar_array(const Json& j) {
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

std::string join(const Json& j) {
  std::string s;
  for (const auto& x : j) s += (s.empty() ? "" : ", ") + scalar_text(x);
  return s;
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, int indent);

void render_object(std::ostringstream& out, const Json& obj, int indent) {
  for (const auto& [key, v] : obj.items()) render_value(out, key, v, indent);
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_object() && v.value("type", "") == "points") {
    std::string pts;
    for (const auto& p : v["points"]) pts += (pts.empty() ? "" : " ") + ("(" + join(p) + ")");
    out << pad << key << " [" << v["count"].get<std::size_t>() << " points over " << scalar_text(v["field"])
        << "]: " << (pts.empty() ? "none" : pts) << "\n";
  } else if (v.is_object()) {
    out << pad << key << ":\n";
    render_object(out, v, indent + 1);
  } else if (v.is_array() && is_scalar_array(v) && join(v).size() > 72) {
    out << pad << key << ":\n";
    for (const auto& x : v) out << pad << "  - " << scalar_text(x) << "\n";
  } else if (v.is_array() && is_scalar_array(v)) {
    out << pad << key << ": [" << join(v) << "]\n";
  } else if (v.is_array()) {
    out << pad << key << ":\n";
    for (const auto& x : v) {
      if (x.is_object()) {
        out << pad << "  -\n";
        render_object(out, x, indent + 2);
      } else if (is_scalar_array(x)) {
        out << pad << "  [" << join(x) << "]\n";
      } else {
        std::string rows;
        for (const auto& row : x) rows += (rows.empty() ? "[" : "; [") + (row.is_array() ? join(row) : scalar_text(row)) + "]";
        out << pad << "  - " << rows << "\n";
      }
    }
  } else {
    out << pad << key << ": " << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string render(const Report& report, const std::string& format) {
  if (format == "structured" || format == "json") return report.document.dump(2) + "\n";
  std::ostringstream out;
  render_object(out, report.document, 0);
  return out.str();
}

}  // namespace jumploci
