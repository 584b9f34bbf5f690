#include "lpair/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>

#include "lpair/io.hpp"

namespace lpair::cli {

namespace {

namespace fs = std::filesystem;
using io::InputError;
using io::json;

/// Domain-level negative outcome that leaves nothing to print.
class NegativeResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field;
  bool strict = false;
  std::uint64_t seed = 0;
  std::string split = "unit";

  // inputs
  std::string a_path, astar_path, pair_path, in_path, batch_dir;

  // gen
  std::string source;
  std::size_t d = 1;
  std::string q = "2";
  int epsilon = 1;
  std::string alpha = "1", beta = "1";
  std::string a_elem, astar_elem;
  unsigned lattice_n = 2;
  std::optional<std::size_t> component;

  // roundtrip
  std::optional<std::size_t> random_count;
  std::size_t max_d = 8;
};

std::optional<FieldSpec> field_override(const Options& o) {
  if (o.field.empty()) return std::nullopt;
  try {
    return FieldSpec::parse(o.field);
  } catch (const FieldError& e) {
    throw InputError(std::string("--field: ") + e.what());
  }
}

FieldSpec field_or_rationals(const Options& o) { return field_override(o).value_or(FieldSpec::rationals()); }

FieldElement element_arg(const FieldSpec& field, const std::string& text, const std::string& name) {
  try {
    return FieldElement::parse(field, text);
  } catch (const FieldError& e) {
    throw InputError(name + ": " + e.what());
  }
}

std::pair<Matrix, Matrix> pair_from_json(const json& j, const std::optional<FieldSpec>& field, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object with \"a\" and \"astar\"");
  const char* star_key = j.contains("astar") ? "astar" : "a_star";
  if (!j.contains("a") || !j.contains(star_key)) throw InputError(where + ": expected fields \"a\" and \"astar\"");
  Matrix a = io::matrix_from_json(j["a"], field, where + ".a");
  Matrix a_star = io::matrix_from_json(j[star_key], field, where + ".astar");
  if (a.rows() != a_star.rows()) throw InputError(where + ": A and A* have different sizes");
  if (a.field() != a_star.field()) throw InputError(where + ": A and A* live in different fields");
  return {a, a_star};
}

std::pair<Matrix, Matrix> read_pair(const Options& o) {
  const auto field = field_override(o);
  if (!o.pair_path.empty()) return pair_from_json(io::read_file(o.pair_path), field, o.pair_path);
  if (o.a_path.empty() || o.astar_path.empty()) throw InputError("expected --pair FILE or both --a FILE and --astar FILE");
  Matrix a = io::matrix_from_json(io::read_file(o.a_path), field, o.a_path);
  Matrix a_star = io::matrix_from_json(io::read_file(o.astar_path), field, o.astar_path);
  if (a.rows() != a_star.rows()) throw InputError("A and A* have different sizes");
  if (a.field() != a_star.field()) throw InputError("A and A* live in different fields");
  return {a, a_star};
}

ParameterArray read_array(const Options& o) {
  if (o.in_path.empty()) throw InputError("expected --in FILE");
  return io::parray_from_json(io::read_file(o.in_path), field_override(o), o.in_path);
}

json pair_json(const Matrix& a, const Matrix& a_star) { return {{"a", io::to_json(a)}, {"astar", io::to_json(a_star)}}; }

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int negative_if(bool negative, const Options& o) { return negative && o.strict ? kExitNegative : kExitOk; }

OffDiagonalSplit split_mode(const Options& o) {
  if (o.split == "unit") return OffDiagonalSplit::unit;
  if (o.split == "symmetric") return OffDiagonalSplit::symmetric;
  throw InputError("--split must be unit or symmetric");
}

void write_atomically(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.batch_dir.empty()) {
    auto [a, a_star] = read_pair(o);
    json report = io::verification_report(a, a_star);
    print(out, report);
    return negative_if(!report["is_leonard_pair"].get<bool>(), o);
  }
  if (!fs::is_directory(o.batch_dir)) throw InputError("--batch: " + o.batch_dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.batch_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" && !name.ends_with(".report.json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const auto field = field_override(o);
  json summary = json::array();
  bool any_negative = false, any_error = false;
  for (const auto& path : files) {
    fs::path report_path = path.parent_path() / (path.stem().string() + ".report.json");
    json item = {{"file", path.filename().string()}};
    try {
      auto [a, a_star] = pair_from_json(io::read_file(path.string()), field, path.string());
      json report = io::verification_report(a, a_star);
      write_atomically(report_path, report.dump(2) + "\n");
      item["is_leonard_pair"] = report["is_leonard_pair"];
      any_negative = any_negative || !report["is_leonard_pair"].get<bool>();
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      item["error"] = e.what();
      any_error = true;
    } catch (const FieldError& e) {
      err << "error: " << path.string() << ": " << e.what() << '\n';
      item["error"] = e.what();
      any_error = true;
    }
    summary.push_back(item);
  }
  print(out, {{"batch", o.batch_dir}, {"files", summary}});
  if (any_error) return kExitInput;
  return negative_if(any_negative, o);
}

ParameterArray extract_from_pair(const Matrix& a, const Matrix& a_star) {
  const PairRecognition rec = is_leonard_pair(a, a_star);
  if (!rec.is_leonard_pair) throw NegativeResult("not a Leonard pair: " + rec.failure_reason);
  return extract_parameter_array(*rec.witness);
}

int cmd_extract(const Options& o, std::ostream& out) {
  auto [a, a_star] = read_pair(o);
  print(out, io::to_json(extract_from_pair(a, a_star)));
  return kExitOk;
}

void require_array(const ParameterArray& pa) {
  try {
    require_valid(pa);
  } catch (const std::invalid_argument& e) {
    throw NegativeResult(e.what());
  }
}

int cmd_construct(const Options& o, std::ostream& out) {
  const ParameterArray pa = read_array(o);
  require_array(pa);
  auto [a, a_star] = construct_bidiagonal(pa);
  print(out, pair_json(a, a_star));
  return kExitOk;
}

int cmd_tdconstruct(const Options& o, std::ostream& out) {
  const ParameterArray pa = read_array(o);
  const OffDiagonalSplit split = split_mode(o);
  require_array(pa);
  auto [a, a_star] = construct_tridiagonal(pa, split);
  json j = pair_json(a, a_star);
  j["split"] = o.split;
  print(out, j);
  return kExitOk;
}

template <typename F>
auto with_pa12(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw NegativeResult(e.what());
  }
}

int cmd_gmatrix(const Options& o, std::ostream& out) {
  const ParameterArray pa = read_array(o);
  const GSearchResult g = with_pa12([&] { return find_g(pa); });
  print(out, io::to_json(g));
  return negative_if(!g.g, o);
}

int cmd_polys(const Options& o, std::ostream& out) {
  const ParameterArray pa = read_array(o);
  const PolyCharacterization pc = with_pa12([&] { return check_poly_characterization(pa); });
  json u = json::array(), u_dual = json::array(), scalars = json::array();
  for (std::size_t i = 0; i <= pa.d; ++i) {
    u.push_back(io::to_json(poly_u(pa, i)));
    u_dual.push_back(io::to_json(poly_u_dual(pa, i)));
    scalars.push_back(pc.scalars[i] ? io::to_json(*pc.scalars[i]) : json(nullptr));
  }
  json j = {{"holds", pc.holds},
            {"first_failure", pc.first_failure ? json(*pc.first_failure) : json(nullptr)},
            {"scalars", scalars},
            {"u", u},
            {"u_dual", u_dual}};
  print(out, j);
  return negative_if(!pc.holds, o);
}

int cmd_awfit(const Options& o, std::ostream& out) {
  auto [a, a_star] = read_pair(o);
  const auto aw = fit_askey_wilson(a, a_star);
  json j = {{"consistent", aw.has_value()}};
  j["coefficients"] = aw ? io::to_json(*aw) : json(nullptr);
  j["converse"] = aw ? io::to_json(check_converse_preconditions(a, a_star, *aw)) : json(nullptr);
  print(out, j);
  return negative_if(!aw, o);
}

int cmd_classify(const Options& o, std::ostream& out) {
  ParameterArray pa;
  if (!o.in_path.empty()) {
    pa = read_array(o);
    require_array(pa);
  } else {
    auto [a, a_star] = read_pair(o);
    pa = extract_from_pair(a, a_star);
  }
  print(out, io::to_json(fingerprint(pa)));
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ParameterArray pa = read_array(o);
  const ValidityReport r = validate(pa);
  print(out, io::to_json(r));
  return negative_if(!r.valid(), o);
}

Sl2Element parse_sl2_element(const FieldSpec& field, const std::string& text, const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw InputError(name + ": expected three comma-separated coefficients x,y,z of xe+yf+zh");
  return {element_arg(field, parts[0], name), element_arg(field, parts[1], name), element_arg(field, parts[2], name)};
}

int cmd_gen(const Options& o, std::ostream& out) {
  json j;
  j["source"] = o.source;
  if (o.source == "example2") {
    const FieldSpec field = field_or_rationals(o);
    const Section2Example ex = example_section2(field);
    j["params"] = json::object();
    j["field"] = field.to_string();
    j["a"] = io::to_json(ex.a);
    j["astar"] = io::to_json(ex.a_star);
    j["p"] = io::to_json(ex.p);
  } else if (o.source == "sl2") {
    const FieldSpec field = field_or_rationals(o);
    Sl2Element a = o.a_elem.empty() ? Sl2Element::h(field) : parse_sl2_element(field, o.a_elem, "--a-elem");
    Sl2Element a_star =
        o.astar_elem.empty() ? Sl2Element::e_plus_f(field) : parse_sl2_element(field, o.astar_elem, "--astar-elem");
    auto coords = [](const Sl2Element& x) { return json::array({io::to_json(x.x), io::to_json(x.y), io::to_json(x.z)}); };
    auto [ma, mas] = sl2_pair(o.d, a, a_star);
    j["params"] = {{"d", o.d}, {"a", coords(a)}, {"astar", coords(a_star)}};
    j["field"] = field.to_string();
    j["a"] = io::to_json(ma);
    j["astar"] = io::to_json(mas);
  } else if (o.source == "uq") {
    const FieldSpec field = field_or_rationals(o);
    const FieldElement q = element_arg(field, o.q, "--q");
    const FieldElement alpha = element_arg(field, o.alpha, "--alpha");
    const FieldElement beta = element_arg(field, o.beta, "--beta");
    const UqPair p = uq_pair(q, o.epsilon, o.d, alpha, beta);
    const int eps = field.characteristic() == 2 ? 1 : o.epsilon;
    j["params"] = {{"q", io::to_json(q)}, {"epsilon", eps}, {"d", o.d}, {"alpha", io::to_json(alpha)},
                   {"beta", io::to_json(beta)}};
    j["field"] = field.to_string();
    j["avoids_forbidden"] = p.avoids_forbidden;
    j["a"] = io::to_json(p.a);
    j["astar"] = io::to_json(p.a_star);
    print(out, j);
    return negative_if(!p.avoids_forbidden, o);
  } else if (o.source == "lattice") {
    unsigned lattice_q = 0;
    try {
      std::size_t used = 0;
      lattice_q = static_cast<unsigned>(std::stoul(o.q, &used));
      if (used != o.q.size()) throw std::invalid_argument(o.q);
    } catch (const std::logic_error&) {
      throw InputError("--q: expected a prime power, got \"" + o.q + "\"");
    }
    const SubspaceLattice lat = build_lattice(o.lattice_n, lattice_q);
    if (auto f = field_override(o); f && *f != lat.field) {
      throw InputError("--field: the lattice of q = " + std::to_string(lattice_q) + " lives over " + lat.field.to_string());
    }
    const FieldElement alpha = element_arg(lat.field, o.alpha, "--alpha");
    const FieldElement beta = element_arg(lat.field, o.beta, "--beta");
    const LatticeDecomposition dec = lattice_pair(lat, alpha, beta);
    j["params"] = {{"n", o.lattice_n}, {"q", lattice_q}, {"alpha", io::to_json(alpha)}, {"beta", io::to_json(beta)}};
    j["field"] = lat.field.to_string();
    json comps = json::array();
    for (const auto& c : dec.components) {
      comps.push_back({{"lowest_rank", c.lowest_rank}, {"d", c.d}, {"is_leonard_pair", c.recognition.is_leonard_pair}});
    }
    if (o.component) {
      if (*o.component >= dec.components.size()) {
        throw InputError("--component: index " + std::to_string(*o.component) + " out of range (" +
                         std::to_string(dec.components.size()) + " components)");
      }
      j["params"]["component"] = *o.component;
      j["a"] = io::to_json(dec.components[*o.component].a);
      j["astar"] = io::to_json(dec.components[*o.component].a_star);
    } else {
      j["a"] = io::to_json(dec.a);
      j["astar"] = io::to_json(dec.a_star);
    }
    j["size"] = lat.points.size();
    j["components"] = comps;
  } else {
    throw InputError("--source must be one of example2, sl2, uq, lattice");
  }
  print(out, j);
  return kExitOk;
}

/// construct -> recognise with the array's own orderings -> extract
std::optional<ParameterArray> round_trip(const ParameterArray& pa) {
  auto [a, a_star] = construct_bidiagonal(pa);
  const auto sys = leonard_system(a, a_star, pa.theta, pa.theta_star);
  if (!sys) return std::nullopt;
  return extract_parameter_array(*sys);
}

int cmd_roundtrip(const Options& o, std::ostream& out) {
  if (!o.random_count) {
    const ParameterArray pa = read_array(o);
    require_array(pa);
    const auto back = round_trip(pa);
    const bool identical = back && *back == pa;
    print(out, {{"identical", identical}, {"input", io::to_json(pa)}, {"extracted", back ? io::to_json(*back) : json(nullptr)}});
    return negative_if(!identical, o);
  }
  const FieldSpec field = field_or_rationals(o);
  std::size_t max_d = o.max_d;
  if (field.kind() == FieldKind::prime) max_d = std::min<std::uint64_t>(max_d, field.modulus() - 1);
  std::mt19937_64 rng(o.seed);
  json mismatches = json::array();
  const RecurrenceFamily families[] = {RecurrenceFamily::classical, RecurrenceFamily::q_type,
                                       RecurrenceFamily::bannai_ito};
  for (std::size_t k = 0; k < *o.random_count; ++k) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(0, max_d)(rng);
    const ParameterArray pa = random_parameter_array(rng, field, d, families[k % 3]);
    const auto back = round_trip(pa);
    if (!back || *back != pa) mismatches.push_back(io::to_json(pa));
  }
  print(out, {{"seed", o.seed},
              {"count", *o.random_count},
              {"field", field.to_string()},
              {"max_d", max_d},
              {"identical", mismatches.empty()},
              {"mismatches", mismatches}});
  return negative_if(!mismatches.empty(), o);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact recognition, construction and classification of Leonard pairs", "lpair"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "Field spec (Q, GF(p), Q(sqrt(m))); overrides the field of the inputs");
  app.add_flag("--strict", o.strict, "Exit with status 1 on negative domain results");
  app.add_option("--seed", o.seed, "Seed for randomized commands");
  app.add_option("--split", o.split, "Off-diagonal split for tdconstruct")->check(CLI::IsMember({"unit", "symmetric"}));

  auto add_pair_inputs = [&](CLI::App* sub) {
    sub->add_option("--a", o.a_path, "Matrix JSON for A ('-' for stdin)");
    sub->add_option("--astar", o.astar_path, "Matrix JSON for A*");
    sub->add_option("--pair", o.pair_path, "JSON object with fields a and astar");
  };
  auto add_array_input = [&](CLI::App* sub) { sub->add_option("--in", o.in_path, "Parameter array JSON ('-' for stdin)"); };

  auto* verify = app.add_subcommand("verify", "Decide whether (A, A*) is a Leonard pair");
  add_pair_inputs(verify);
  verify->add_option("--batch", o.batch_dir, "Verify every *.json pair in a directory, writing <name>.report.json");
  auto* extract = app.add_subcommand("extract", "Parameter array of a Leonard pair");
  add_pair_inputs(extract);
  auto* construct = app.add_subcommand("construct", "Bidiagonal pair of a parameter array");
  add_array_input(construct);
  auto* tdconstruct = app.add_subcommand("tdconstruct", "Tridiagonal/diagonal pair of a parameter array");
  add_array_input(tdconstruct);
  auto* gmatrix = app.add_subcommand("gmatrix", "Search for the conjugating matrix G");
  add_array_input(gmatrix);
  auto* polys = app.add_subcommand("polys", "Polynomial characterization of a parameter array");
  add_array_input(polys);
  auto* awfit = app.add_subcommand("awfit", "Fit the Askey-Wilson relations to a pair");
  add_pair_inputs(awfit);
  auto* classify = app.add_subcommand("classify", "Fingerprint of a parameter array or pair");
  add_array_input(classify);
  add_pair_inputs(classify);
  auto* validate_cmd = app.add_subcommand("validate-array", "Check the axioms PA1-PA5");
  add_array_input(validate_cmd);
  auto* gen = app.add_subcommand("gen", "Generate a pair from example2, sl2, uq or lattice");
  gen->add_option("--source", o.source, "example2 | sl2 | uq | lattice")->required();
  gen->add_option("--d", o.d, "Diameter (sl2, uq)");
  gen->add_option("--q", o.q, "q as a field element (uq) or prime power (lattice)");
  gen->add_option("--epsilon", o.epsilon, "1 or -1 (uq)")->check(CLI::IsMember({1, -1}));
  gen->add_option("--alpha", o.alpha, "alpha (uq, lattice)");
  gen->add_option("--beta", o.beta, "beta (uq, lattice)");
  gen->add_option("--a-elem", o.a_elem, "A = xe+yf+zh given as x,y,z (sl2)");
  gen->add_option("--astar-elem", o.astar_elem, "A* = xe+yf+zh given as x,y,z (sl2)");
  gen->add_option("--n", o.lattice_n, "Ambient dimension (lattice)");
  gen->add_option("--component", o.component, "Emit the restricted pair of one component (lattice)");
  auto* roundtrip = app.add_subcommand("roundtrip", "Construct, extract and compare");
  add_array_input(roundtrip);
  roundtrip->add_option("--random", o.random_count, "Round-trip N seeded random arrays instead of --in");
  roundtrip->add_option("--max-d", o.max_d, "Largest diameter for --random");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (extract->parsed()) return cmd_extract(o, out);
    if (construct->parsed()) return cmd_construct(o, out);
    if (tdconstruct->parsed()) return cmd_tdconstruct(o, out);
    if (gmatrix->parsed()) return cmd_gmatrix(o, out);
    if (polys->parsed()) return cmd_polys(o, out);
    if (awfit->parsed()) return cmd_awfit(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (roundtrip->parsed()) return cmd_roundtrip(o, out);
  } catch (const NegativeResult& e) {
    err << e.what() << '\n';
    return kExitNegative;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GeneratorError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FieldError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace lpair::cli
