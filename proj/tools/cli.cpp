#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "multfree/errors.hpp"

namespace multfree::cli {

namespace {

using io::Json;

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse_document(ss.str());
}

const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object()) throw InputError("", "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError("/" + key, "missing required field");
  return *it;
}

Json vectors_json(const std::vector<IntegerVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(io::to_json(v));
  return a;
}

Json invariant_factors_json(const std::vector<Integer>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(d.get_si());
  return a;
}

// --- subcommands -------------------------------------------------------------

Json cone_check(const std::string& file) {
  const ConeData c = io::parse_cone(read_file(file), "");
  const SmoothnessReport s = is_smooth(c);
  Json out = io::to_json(c);
  out["pointed"] = is_pointed(c);
  out["smooth"] = s.smooth;
  out["lineality"] = vectors_json(lineality_space(c));
  out["extremal_rays"] = vectors_json(extremal_rays(c));
  out["witness"] = s.witness ? vectors_json(*s.witness) : Json(nullptr);
  return out;
}

Json polytope_delzant(const std::string& file) {
  const PolytopeData p = io::parse_polytope(read_file(file), "");
  const DelzantReport r = is_delzant_polytope(p);
  Json cones = Json::array();
  for (const auto& v : p.vertices()) {
    const ConeData t = tangent_cone_at_vertex(p, v);
    cones.push_back(Json{{"vertex", io::to_json_point(v)},
                         {"edges", vectors_json(t.generators())},
                         {"smooth", is_pointed(t) && is_smooth(t).smooth}});
  }
  return Json{{"delzant", r.delzant},
              {"failing_vertex", r.failing_vertex ? io::to_json_point(*r.failing_vertex) : Json(nullptr)},
              {"vertices", io::to_json(p)["vertices"]},
              {"tangent_cones", cones}};
}

Json rep_construct(const std::string& file) {
  const Json doc = read_file(file);
  const ConeData cone = io::parse_cone(field(doc, "cone"), "/cone");
  const ExtensionData ext = io::parse_extension(field(doc, "extension"), "/extension");
  const Json* cj = doc.contains("cocycle") ? &doc["cocycle"] : nullptr;
  std::vector<RationalVector> f(ext.group().order(), RationalVector(ext.rank(), 0));
  if (cj) {
    f = io::parse_gamma_table(*cj, "/cocycle", ext.module());
  } else if (!ext.kappa().is_zero()) {
    auto s = is_split(ext);
    if (!s) throw PreconditionError("extension does not split; no representation exists");
    for (auto& v : *s)
      for (auto& x : v) x = -x;
    f = *s;  // f = -s solves d f = kappa
  }
  const ToricRepData rep = construct_representation(cone, ext, f);
  return Json{{"rep", io::to_json(rep)}, {"ext_class", io::to_json(ext_class(rep))}};
}

Json rep_invariants(const std::string& file) {
  const ToricRepData rep = io::parse_rep(read_file(file), "");
  const IsoInvariants inv = iso_invariants(rep);
  return Json{{"cone", io::to_json(inv.cone)}, {"ext_class", io::to_json(inv.ext_class)}};
}

Json rep_twist(const std::string& file) {
  const Json doc = read_file(file);
  const ToricRepData rep = io::parse_rep(field(doc, "rep"), "/rep");
  const auto values = io::parse_gamma_table(field(doc, "class"), "/class", rep.extension().module());
  const TorusOneCocycle h(rep.extension().module(), values);
  const ToricRepData out = twist_representation(rep, h);
  return Json{{"rep", io::to_json(out)}, {"ext_class", io::to_json(ext_class(out))}};
}

Json cohomology_lattice_cmd(const std::string& file, std::size_t degree) {
  const LatticeModule m = io::parse_module(read_file(file), "");
  const auto ds = cohomology_lattice(m, degree);
  return Json{{"degree", degree}, {"invariant_factors", invariant_factors_json(ds)}};
}

Json cohomology_torus_cmd(const std::string& file, std::size_t degree) {
  const LatticeModule m = io::parse_module(read_file(file), "");
  const TorusCohomology h = cohomology_torus(m, degree);
  Json reps = Json::array();
  for (const auto& c : h.representatives) reps.push_back(io::cochain_json(m.group(), c));
  return Json{{"degree", degree},
              {"invariant_factors", invariant_factors_json(h.invariant_factors)},
              {"order", h.order().get_si()},
              {"representatives", reps}};
}

Json extension_split(const std::string& file) {
  const ExtensionData ext = io::parse_extension(read_file(file), "");
  const auto s = is_split(ext);
  return Json{{"split", s.has_value()}, {"section", s ? io::gamma_table_json(ext.group(), *s) : Json(nullptr)}};
}

Json extension_i1(const std::string& file) {
  const ExtensionData ext = io::parse_extension(read_file(file), "");
  const auto cls = i1_set(ext);
  Json a = Json::array();
  for (const auto& c : cls) a.push_back(io::to_json(c));
  return Json{{"split", !cls.empty()}, {"count", cls.size()}, {"classes", a}};
}

Json stalk_sizes(const StratifiedIsotropyDiagram& d) {
  Json s = Json::object();
  for (std::size_t i = 0; i < d.size(); ++i) s[d.stratum(i).id] = d.classes(i).size();
  return s;
}

Json sheaf_sections(const std::string& file) {
  const StratifiedIsotropyDiagram d = io::parse_diagram(read_file(file), "");
  const auto sections = enumerate_global_sections(d);
  Json a = Json::array();
  for (const auto& s : sections) a.push_back(io::section_json(d, s));
  return Json{{"section_count", sections.size()}, {"stalk_sizes", stalk_sizes(d)}, {"sections", a}};
}

Json germ_json(const GermKey& k) { return Json::array({io::to_json(k.first), io::to_json(k.second)}); }

Json casestudy_cylinder() {
  const CylinderCaseStudy cs = build_cylinder_case_study();
  const auto sections = enumerate_global_sections(cs.diagram);
  Json a = Json::array();
  Json germs = Json::array();
  bool coincide = true;
  std::vector<std::pair<GermKey, GermKey>> keys;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    a.push_back(io::section_json(cs.diagram, sections[i]));
    const auto key = classification_key(cs, sections[i]);
    keys.push_back(key);
    coincide = coincide && key.first.second == key.second.second;
    germs.push_back(Json{{"section", i}, {"p+", germ_json(key.first)}, {"p-", germ_json(key.second)}});
  }
  Json tau = Json::array();
  for (const auto& t : cs.tau) {
    const auto [gp, gm] = tau_germs(cs, t);
    const std::pair<GermKey, GermKey> key{germ_key(cs, gp), germ_key(cs, gm)};
    Json match = nullptr;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) match = i;
    tau.push_back(Json{{"tau", t.label}, {"p+", germ_json(key.first)}, {"p-", germ_json(key.second)}, {"section", match}});
  }
  return Json{{"diagram", io::to_json(cs.diagram)},
              {"section_count", sections.size()},
              {"expected_section_count", cs.expected_section_count},
              {"stalk_sizes", stalk_sizes(cs.diagram)},
              {"germ_components", "[f(b)_1, f(a)_2] with a = (-1,1), b = (1,-1)"},
              {"second_components_coincide", coincide},
              {"fixed_point_germs", germs},
              {"tau_table", tau},
              {"sections", a}};
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"Invariants of multiplicity-free torus actions: cones, cohomology, extensions, ext-sheaf sections",
               argv.empty() ? "multfree" : argv.front()};
  app.require_subcommand(1);
  std::string format = "json";
  std::optional<long long> seed;
  app.add_option("--format", format, "Output format (json)")->check(CLI::IsMember({"json"}));
  app.add_option("--seed", seed, "Seed for randomized fixtures (reserved)");
  std::function<Json()> action;
  std::string file;
  std::size_t degree = 0;

  auto with_file = [&](CLI::App* sub, const std::string& desc, std::function<Json(const std::string&)> f) {
    sub->add_option("file", file, desc)->required();
    sub->callback([&action, &file, f] { action = [f, &file] { return f(file); }; });
  };

  CLI::App* cone = app.add_subcommand("cone", "Cone reports")->require_subcommand(1);
  with_file(cone->add_subcommand("check", "Pointedness, smoothness and lineality of a cone"), "cone JSON", cone_check);
  CLI::App* poly = app.add_subcommand("polytope", "Polytope reports")->require_subcommand(1);
  with_file(poly->add_subcommand("delzant", "Delzant check with the first failing vertex"), "polytope JSON",
            polytope_delzant);
  CLI::App* rep = app.add_subcommand("rep", "Maximally toric representations")->require_subcommand(1);
  with_file(rep->add_subcommand("construct", "Build a representation from (cone, extension, cocycle)"), "input JSON",
            rep_construct);
  with_file(rep->add_subcommand("invariants", "Isomorphism invariants (cone, ext-class)"), "rep JSON", rep_invariants);
  with_file(rep->add_subcommand("twist", "Twist a representation by an H^1 class"), "input JSON", rep_twist);
  CLI::App* coh = app.add_subcommand("cohomology", "Group cohomology")->require_subcommand(1);
  for (const char* which : {"lattice", "torus"}) {
    const bool lattice = std::string(which) == "lattice";
    CLI::App* sub = coh->add_subcommand(which, lattice ? "H^k(Gamma, Lambda)" : "H^k(Gamma, T) with representatives");
    sub->add_option("--degree", degree, "Degree k")->required();
    with_file(sub, "module JSON", [lattice, &degree](const std::string& f) {
      return lattice ? cohomology_lattice_cmd(f, degree) : cohomology_torus_cmd(f, degree);
    });
  }
  CLI::App* ext = app.add_subcommand("extension", "Extensions of Gamma by T")->require_subcommand(1);
  with_file(ext->add_subcommand("split", "Splitting section, if any"), "extension JSON", extension_split);
  with_file(ext->add_subcommand("i1", "The I^1 set"), "extension JSON", extension_i1);
  CLI::App* sheaf = app.add_subcommand("sheaf", "Ext-sheaf diagrams")->require_subcommand(1);
  with_file(sheaf->add_subcommand("sections", "Enumerate flat global sections"), "diagram JSON", sheaf_sections);
  CLI::App* cs = app.add_subcommand("casestudy", "Built-in case studies")->require_subcommand(1);
  cs->add_subcommand("cylinder", "The Z2 x Z2 cylinder example")->callback([&action] { action = casestudy_cylinder; });

  CommandResult r;
  try {
    std::vector<std::string> args(argv.empty() ? argv.begin() : argv.begin() + 1, argv.end());
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    r.payload = nullptr;
    r.diagnostics.push_back(app.help());
    return r;
  } catch (const CLI::ParseError& e) {
    r.status = Status::error;
    r.exit_code = 1;
    r.diagnostics.push_back(std::string("usage: ") + e.what());
    return r;
  }

  try {
    r.payload = action();
  } catch (const InputError& e) {
    r.status = Status::error;
    r.exit_code = 1;
    r.diagnostics.push_back(std::string("malformed input: ") + e.what());
  } catch (const PreconditionError& e) {
    r.status = Status::error;
    r.exit_code = 2;
    r.diagnostics.push_back(std::string("precondition violated: ") + e.what());
  }
  if (r.status == Status::error) {
    r.payload = Json{{"status", "error"}, {"exit_code", r.exit_code}, {"diagnostics", r.diagnostics}};
  }
  return r;
}

int emit(const CommandResult& r) {
  if (!r.payload.is_null()) std::cout << r.payload.dump(2) << '\n';
  for (const auto& d : r.diagnostics) std::cerr << d << '\n';
  return r.exit_code;
}

}  // namespace multfree::cli
