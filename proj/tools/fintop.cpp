//  Copyright 2026 The fintop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 a check failed (details as
// JSON on stderr), 2 malformed input or flags.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fintop/fintop.hpp"

namespace {

using fintop::io::json;
using fintop::io::to_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

/// Thrown for unusable input that never reached the library.
struct InputError {
  std::string message;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InputError{"cannot open " + path};
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError{std::string("invalid JSON: ") + e.what()};
  }
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

/// Report on stdout, reason on stderr, exit 1.
int fail(const json& report, const std::string& kind, const std::string& message) {
  emit(report);
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return kCheckFailed;
}

json sets_to_json(const std::vector<fintop::PointSet>& sets) {
  json out = json::array();
  for (auto s : sets) out.push_back(to_json(s));
  return out;
}

json labelled(const fintop::FiniteSpace& x, fintop::PointSet s) {
  json out = json::array();
  s.for_each([&](std::size_t p) { out.push_back(x.label(p)); });
  return out;
}

fintop::PointSet parse_set(const std::vector<std::size_t>& indices, std::size_t n) {
  fintop::PointSet s;
  for (auto i : indices) {
    if (i >= n) throw InputError{"point index " + std::to_string(i) + " out of range"};
    s.insert(i);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const auto x = fintop::io::space_from_json(read_json(path));
  emit({{"valid", true}, {"size", x.size()}, {"open_count", x.open_count()}});
  return kOk;
}

int cmd_info(const std::string& path) {
  const auto x = fintop::io::space_from_json(read_json(path));
  json out;
  out["size"] = x.size();
  out["open_count"] = x.open_count();
  out["t0"] = fintop::is_t0(x);
  out["sober"] = fintop::is_sober(x);
  out["components"] = sets_to_json(fintop::connected_components(x));
  if (fintop::is_t0(x)) {
    const auto f = fintop::canonical_filtration(x);
    out["length"] = fintop::length(x);
    out["strata"] = sets_to_json(f.strata);
    json named = json::array();
    for (auto s : f.strata) named.push_back(labelled(x, s));
    out["strata_labels"] = named;
  } else {
    out["length"] = nullptr;
    out["strata"] = nullptr;
  }
  emit(out);
  return kOk;
}

int cmd_soberify(const std::string& path) {
  const auto x = fintop::io::space_from_json(read_json(path));
  const auto s = fintop::soberification(x);
  emit({{"space", to_json(s.space)}, {"points", sets_to_json(s.points)}, {"iota", s.iota.assignment()}});
  return kOk;
}

int cmd_alexandrov(const std::string& path, bool from_preorder) {
  const auto j = read_json(path);
  if (from_preorder) {
    const auto& p = j.is_object() && j.contains("preorder") ? j.at("preorder") : j;
    emit(to_json(fintop::alexandrov_topology(fintop::io::preorder_from_json(p))));
  } else {
    emit(to_json(fintop::specialization_preorder(fintop::io::space_from_json(j))));
  }
  return kOk;
}

int cmd_hasse(const std::string& path, bool dot) {
  const auto x = fintop::io::space_from_json(read_json(path));
  if (dot) {
    std::cout << fintop::hasse_dot(x);
    return kOk;
  }
  json edges = json::array();
  for (const auto& e : fintop::hasse_diagram(x)) edges.push_back({e.from, e.to});
  emit({{"edges", edges}, {"size", x.size()}});
  return kOk;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

struct EnumerateOptions {
  std::size_t points = 0;
  bool connected = false;
  bool t0 = false;
  bool up_to_homeo = false;
  bool table = false;
  bool dot = false;
  std::size_t threads = 1;
};

int cmd_enumerate(const EnumerateOptions& o) {
  if (o.dot && !o.t0) throw InputError{"--dot needs --t0 (Hasse diagrams exist only for T0 classes)"};
  std::size_t labeled = 0;
  std::vector<fintop::CanonicalForm> classes;
  const bool need_classes = o.up_to_homeo || o.connected || o.dot;
  if (need_classes) {
    const auto row = fintop::census(o.points, o.connected, o.t0, o.threads);
    labeled = row.labeled_count;
    classes = row.classes;
  } else {
    labeled = fintop::count_labeled_preorders(o.points, o.t0);
  }
  if (o.dot) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto x = fintop::alexandrov_topology(fintop::decode(classes[i]))
                         .with_labels(fintop::spaces::numbered_labels(o.points));
      std::cout << fintop::hasse_dot(x, "class" + std::to_string(i + 1));
    }
    return kOk;
  }
  if (o.table) {
    std::cout << "points  connected  t0   labeled";
    if (o.up_to_homeo) std::cout << "  classes";
    std::cout << '\n';
    char line[96];
    std::snprintf(line, sizeof line, "%6zu  %-9s  %-3s  %8zu", o.points, o.connected ? "yes" : "no",
                  o.t0 ? "yes" : "no", labeled);
    std::cout << line;
    if (o.up_to_homeo) std::cout << "  " << classes.size();
    std::cout << '\n';
    return kOk;
  }
  json out{{"points", o.points}, {"connected", o.connected}, {"t0", o.t0}, {"labeled", labeled}};
  if (o.up_to_homeo) {
    out["classes"] = classes.size();
    json forms = json::array();
    for (const auto& c : classes) forms.push_back(c.hex());
    out["canonical_forms"] = forms;
  }
  emit(out);
  return kOk;
}

// ---------------------------------------------------------------------------
// Completion
// ---------------------------------------------------------------------------

int cmd_complete(const std::string& path, bool dot, bool full) {
  const auto x = fintop::io::space_from_json(read_json(path));
  const auto c = full ? fintop::build_full_y(x) : fintop::build_yprime(x);
  if (dot) {
    std::cout << fintop::hasse_dot(c.space, full ? "Y" : "Yprime");
    return kOk;
  }
  json points = json::array();
  for (auto y : c.points) points.push_back(sets_to_json(c.members(y)));
  json out{{"space", to_json(c.space)}, {"points", points}};
  if (!full) {
    const auto emb = fintop::neighborhood_filter_embedding(c);
    out["embedding"] = emb.assignment();
    out["embedding_induces_topology"] = fintop::embedding_induces_topology(emb);
  }
  emit(out);
  return kOk;
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

int cmd_action_check(const std::string& path) {
  const auto a = fintop::io::action_from_json(read_json(path));
  const auto r = fintop::check_action(a);
  json supports = json::array();
  for (const auto& lc : fintop::locally_closed_sets(a.base())) {
    if (lc.carrier.empty()) continue;
    const auto s = fintop::subquotient_support(a, lc.carrier);
    supports.push_back({{"set", to_json(lc.carrier)}, {"support", to_json(s.carrier.carrier)}, {"witnesses", s.witnesses}});
  }
  json out{{"joins", r.joins}, {"meets", r.meets}, {"tight", r.tight}, {"supports", supports}};
  if (!r.joins || !r.meets) return fail(out, "PreservationFailure", "ideal map does not preserve joins and meets");
  emit(out);
  return kOk;
}

int cmd_action_restrict(const std::string& path, const std::vector<std::size_t>& set) {
  const auto a = fintop::io::action_from_json(read_json(path));
  const auto r = fintop::restrict_to(a, parse_set(set, a.base().size()));
  emit({{"action", to_json(r.action)}, {"base_points", r.base_points}, {"prim_points", r.prim_points}});
  return kOk;
}

int cmd_action_pushforward(const std::string& path, const std::string& map_path) {
  const auto a = fintop::io::action_from_json(read_json(path));
  const auto m = read_json(map_path);
  auto cod = fintop::io::space_from_json(fintop::io::detail::field(m, "codomain"));
  auto assignment = fintop::io::assignment_from_json(fintop::io::detail::field(m, "map"), a.base().size(), cod.size());
  const fintop::ContinuousMap f(a.base(), std::move(cod), std::move(assignment));
  emit(to_json(fintop::pushforward(f, a)));
  return kOk;
}

int cmd_action_filtrate(const std::string& path) {
  const auto a = fintop::io::action_from_json(read_json(path));
  json strata = json::array();
  for (const auto& s : fintop::filtration_of_action(a)) {
    strata.push_back({{"level", s.level},
                      {"stratum", to_json(s.support.over.carrier)},
                      {"support", to_json(s.support.carrier.carrier)},
                      {"fibers", sets_to_json(s.fibers)}});
  }
  emit({{"strata", strata}});
  return kOk;
}

int cmd_action_reconstruct(const std::string& path) {
  const auto [assign, prim] = fintop::io::ideal_assignment_from_json(read_json(path));
  emit(to_json(fintop::reconstruct(assign, prim)));
  return kOk;
}

int cmd_action_constraints(const std::string& path) {
  const auto x = fintop::io::space_from_json(read_json(path));
  json out = json::array();
  for (const auto& c : fintop::reconstruction_constraints(x)) out.push_back(fintop::to_string(c, x));
  emit({{"constraints", out}});
  return kOk;
}

// ---------------------------------------------------------------------------
// K-theory
// ---------------------------------------------------------------------------

int cmd_snf(const std::string& path) {
  const auto j = read_json(path);
  const auto m = fintop::io::matrix_from_json(fintop::io::detail::field(j, "matrix"));
  const auto s = fintop::smith_normal_form(m);
  json diag = json::array();
  for (std::size_t i = 0; i < s.rank; ++i) diag.push_back(to_json(s.diagonal(i)));
  emit({{"u", to_json(s.u)}, {"d", to_json(s.d)}, {"v", to_json(s.v)}, {"rank", s.rank}, {"diagonal", diag}});
  return kOk;
}

int cmd_exact(const std::string& path) {
  const auto j = read_json(path);
  const auto f = fintop::io::hom_from_json(fintop::io::detail::field(j, "f"));
  const auto g = fintop::io::hom_from_json(fintop::io::detail::field(j, "g"));
  const auto r = fintop::is_exact_at(f, g);
  if (!r.exact) return fail(to_json(r), "NotExact", "sequence is not exact (" + r.failure + ")");
  emit(to_json(r));
  return kOk;
}

int cmd_six_term(const std::string& path) {
  const auto r = fintop::verify_six_term(fintop::io::cycle_from_json(read_json(path)));
  if (!r.exact()) return fail(to_json(r), "NotExact", "six-term cycle is not exact");
  emit(to_json(r));
  return kOk;
}

int cmd_datum_verify(const std::string& path) {
  const auto d = fintop::io::datum_from_json(read_json(path));
  const auto r = fintop::verify_datum(d);
  json tri = json::array();
  for (const auto& t : r.triangles) {
    tri.push_back({{"open", to_json(t.open)}, {"set", to_json(t.set)}, {"report", to_json(t.report)}});
  }
  const auto v = fintop::vanishing_propagation(d);
  json van{{"applicable", v.applicable}, {"all_vanish", v.all_vanish}, {"derivation", sets_to_json(v.derivation)}};
  van["deviation"] = v.deviation ? json{{"open", to_json(v.deviation->first)}, {"set", to_json(v.deviation->second)}}
                                 : json(nullptr);
  json out{{"exact", r.ok()}, {"triangles", tri}, {"vanishing", van}};
  if (auto w = r.first_failure()) {
    out["first_failure"] = {{"open", to_json(w->first)}, {"set", to_json(w->second)}};
    return fail(out, "NotExact", "datum has a non-exact six-term cycle");
  }
  emit(out);
  return kOk;
}

int cmd_two_point(const std::string& path) {
  const auto j = read_json(path);
  auto hom = [&](const char* key) { return fintop::io::hom_from_json(fintop::io::detail::field(j, key)); };
  const auto r = fintop::two_point_sequence(hom("top"), hom("right"), hom("left"), hom("bottom"));
  json out{{"delta", to_json(r.delta)},
           {"kernel", to_json(r.kernel)},
           {"kernel_invariants", to_json(r.kernel.invariants())},
           {"cokernel", to_json(r.cokernel)},
           {"cokernel_invariants", to_json(r.cokernel.invariants())},
           {"note", r.note}};
  if (r.middle) {
    out["middle"] = to_json(*r.middle);
    out["middle_invariants"] = to_json(r.middle->invariants());
  } else {
    out["middle"] = nullptr;
  }
  emit(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite topological spaces, actions over them, and exactness checks for their K-theoretic data"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto file_command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                          std::function<int(const std::string&)> fn) {
    auto* sub = parent->add_subcommand(name, help);
    auto path = std::make_shared<std::string>();
    sub->add_option("file", *path, "JSON input, or - for stdin")->required();
    sub->callback([&action, path, fn] { action = [path, fn] { return fn(*path); }; });
    return sub;
  };

  file_command(&app, "validate", "check that a space description is a topology", cmd_validate);
  file_command(&app, "info", "T0, sobriety, length, components and filtration strata", cmd_info);
  file_command(&app, "soberify", "soberification of a space", cmd_soberify);

  auto* alex = app.add_subcommand("alexandrov", "convert between preorders and topologies");
  std::string alex_path;
  auto* from = alex->add_flag("--from-preorder", "preorder JSON to space JSON");
  auto* to = alex->add_flag("--to-preorder", "space JSON to its specialisation preorder");
  from->excludes(to);
  alex->add_option("file", alex_path, "JSON input, or - for stdin")->required();
  alex->callback([&] {
    if (!*from && !*to) throw CLI::ValidationError("alexandrov", "one of --from-preorder and --to-preorder is required");
    const bool f = static_cast<bool>(*from);
    action = [&alex_path, f] { return cmd_alexandrov(alex_path, f); };
  });

  EnumerateOptions eo;
  auto* en = app.add_subcommand("enumerate", "count spaces, optionally up to homeomorphism");
  en->add_option("--points", eo.points, "number of points")->required()->check(CLI::Range(0, 7));
  en->add_flag("--connected", eo.connected, "only connected spaces");
  en->add_flag("--t0", eo.t0, "only T0 spaces");
  en->add_flag("--up-to-homeo", eo.up_to_homeo, "count homeomorphism classes");
  auto* as_json = en->add_flag("--json", "JSON output (default)");
  auto* as_table = en->add_flag("--table", eo.table, "human-readable table");
  as_json->excludes(as_table);
  en->add_flag("--dot", eo.dot, "Hasse diagram of every class in DOT");
  en->add_option("--threads", eo.threads, "worker threads; output does not depend on it")->check(CLI::Range(1, 64));
  en->callback([&] { action = [&eo] { return cmd_enumerate(eo); }; });

  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of a T0 space");
  std::string hasse_path;
  bool hasse_dot_flag = false;
  hasse->add_option("file", hasse_path, "JSON input, or - for stdin")->required();
  hasse->add_flag("--dot", hasse_dot_flag, "emit Graphviz DOT");
  hasse->callback([&] { action = [&] { return cmd_hasse(hasse_path, hasse_dot_flag); }; });

  auto* comp = app.add_subcommand("complete", "completion Y' of a space and its embedding");
  std::string comp_path;
  bool comp_dot = false, comp_full = false;
  comp->add_option("file", comp_path, "JSON input, or - for stdin")->required();
  comp->add_flag("--dot", comp_dot, "emit the Hasse diagram of the completion in DOT");
  comp->add_flag("--full", comp_full, "use all families of opens instead of the admissible ones");
  comp->callback([&] { action = [&] { return cmd_complete(comp_path, comp_dot, comp_full); }; });

  auto* act = app.add_subcommand("action", "actions P -> X");
  act->require_subcommand(1);
  file_command(act, "check", "join/meet preservation, tightness and subquotient supports", cmd_action_check);
  file_command(act, "filtrate", "supports along the canonical filtration", cmd_action_filtrate);
  file_command(act, "reconstruct", "rebuild an action from ideals of minimal neighbourhoods", cmd_action_reconstruct);
  file_command(act, "constraints", "reduced conditions on minimal ideals over a T0 space", cmd_action_constraints);
  std::vector<std::size_t> restrict_set;
  auto* restr = file_command(act, "restrict", "restrict to a locally closed subset", nullptr);
  restr->add_option("--set", restrict_set, "point indices, comma separated")->required()->delimiter(',');
  restr->callback([&, restr] {
    const auto path = restr->get_option("file")->as<std::string>();
    action = [&restrict_set, path] { return cmd_action_restrict(path, restrict_set); };
  });
  std::string push_map;
  auto* push = file_command(act, "pushforward", "push forward along a continuous map", nullptr);
  push->add_option("--map", push_map, "JSON {\"codomain\": <space>, \"map\": [...]}")->required();
  push->callback([&, push] {
    const auto path = push->get_option("file")->as<std::string>();
    action = [&push_map, path] { return cmd_action_pushforward(path, push_map); };
  });

  auto* kt = app.add_subcommand("ktheory", "integer linear algebra and exactness checks");
  kt->require_subcommand(1);
  file_command(kt, "snf", "Smith normal form of {\"matrix\": rows}", cmd_snf);
  file_command(kt, "exact", "exactness of {\"f\": hom, \"g\": hom} at the middle", cmd_exact);
  file_command(kt, "six-term", "exactness of a six-term cycle at every node", cmd_six_term);
  file_command(kt, "datum-verify", "verify a filtrated K-theory datum", cmd_datum_verify);
  file_command(kt, "two-point", "boundary map and extension for the two-point space", cmd_two_point);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << json{{"error", "InvalidInput"}, {"message", e.message}}.dump() << '\n';
    return kBadInput;
  } catch (const fintop::Error& e) {
    std::cerr << to_json(e).dump() << '\n';
    return fintop::is_input_error(e.kind()) ? kBadInput : kCheckFailed;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << '\n';
    return kBadInput;
  }
}
