#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes the report to `out`, diagnostics to `err`.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "leafspec/leafspec.hpp"

namespace leafspec::cli {

namespace detail {

inline Tree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_tree(in);
}

inline std::vector<std::int64_t> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_sequence(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

inline void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

struct Global {
  unsigned workers = 1;
  std::uint64_t work_limit = Limits{}.max_work;
  std::uint64_t max_vertices = Limits{}.max_vertices;

  Limits limits() const { return {max_vertices, work_limit}; }
  SpectrumOptions spectrum() const { return {limits(), workers}; }
  EnumerationOptions enumeration() const { return {limits(), workers}; }
};

// Either prints the tree or writes it to `out_path` with a JSON sidecar.
inline void finish_construct(std::ostream& out, const std::string& out_path, bool params_only, const Tree* tree,
                             Json params) {
  if (params_only) {
    emit(out, params);
    return;
  }
  if (out_path.empty()) {
    write_tree(out, *tree);
    return;
  }
  write_text_file(out_path, to_edge_list(*tree));
  write_text_file(out_path + ".json", params.dump(2) + "\n");
  emit(out, params);
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leaf-to-leaf path length spectra of trees", "leafspec"};
  app.fallthrough();
  app.require_subcommand(1);
  detail::Global g;
  app.add_option("--workers", g.workers, "Worker threads for parallel stages")->check(CLI::Range(1u, 256u));
  app.add_option("--work-limit", g.work_limit, "Maximum elementary steps before refusing a job");
  app.add_option("--max-vertices", g.max_vertices, "Maximum vertices of constructed trees");

  std::function<void()> action;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Leaf-to-leaf length spectrum of a tree");
  std::string spectrum_file;
  Vertex spectrum_witness = -1;
  int spectrum_max_len = -1;
  spectrum->add_option("file", spectrum_file, "Edge-list file")->required();
  auto* witness_opt = spectrum->add_option("--witness", spectrum_witness, "Report lengths witnessed by this leaf");
  auto* max_len_opt = spectrum->add_option("--max-len", spectrum_max_len, "Only lengths up to this bound");
  max_len_opt->check(CLI::NonNegativeNumber);
  spectrum->callback([&] {
    action = [&] {
      const auto t = detail::read_tree_file(spectrum_file);
      const auto report = spectrum_report(t, g.spectrum());
      Json j;
      j["procedure"] = "leaf spectrum";
      detail::merge(j, to_json(report));
      if (*max_len_opt) {
        const auto clipped = report.spectrum.clipped(spectrum_max_len);
        j["max_len"] = spectrum_max_len;
        j["spectrum"] = to_json(clipped);
        j["spectrum_size"] = clipped.size();
      }
      if (*witness_opt) {
        const auto w = *max_len_opt ? witnessed_in_range(t, spectrum_witness, spectrum_max_len)
                                    : witnessed(t, spectrum_witness);
        Json wj;
        wj["leaf"] = spectrum_witness;
        wj["lengths"] = to_json(w);
        wj["count"] = w.size();
        j["witness"] = std::move(wj);
      }
      detail::emit(out, j);
    };
  });

  // construct
  auto* construct = app.add_subcommand("construct", "Build a tree or graph");
  construct->require_subcommand(1);
  std::string out_path;
  bool params_only = false;
  construct->add_option("--out", out_path, "Write the edge list here plus a .json sidecar");
  construct->add_flag("--params", params_only, "Print the parameters only");
  construct->fallthrough();

  int delta = 3, depth = 1, layers = 1;
  std::uint64_t leaf_target = 0;
  std::int64_t star_n = 0, big_n = 0, small_n = 0, repeats = 1;
  std::string seq_file, tree_file;

  auto* extremal = construct->add_subcommand("extremal", "Perfect delta-regular tree of depth d");
  extremal->add_option("--delta", delta)->required()->check(CLI::Range(3, 64));
  extremal->add_option("--d", depth)->required()->check(CLI::Range(0, 64));
  extremal->callback([&] {
    action = [&] {
      std::optional<Tree> t;
      if (!params_only) t = perfect_regular_extremal(delta, depth, g.limits());
      Json p;
      p["procedure"] = "perfect regular extremal tree";
      p["delta"] = delta;
      p["d"] = depth;
      p["vertices"] = regular_extremal_size(delta, depth);
      detail::finish_construct(out, out_path, params_only, t ? &*t : nullptr, p);
    };
  });

  auto* trimmed = construct->add_subcommand("trimmed", "Extremal tree trimmed to a leaf count");
  trimmed->add_option("--delta", delta)->required()->check(CLI::Range(3, 64));
  trimmed->add_option("--d", depth)->required()->check(CLI::Range(1, 64));
  trimmed->add_option("--leaves", leaf_target)->required();
  trimmed->callback([&] {
    action = [&] {
      const auto t = trimmed_extremal(delta, depth, leaf_target, g.limits());
      Json p;
      p["procedure"] = "trimmed extremal tree";
      p["delta"] = delta;
      p["d"] = depth;
      p["leaves"] = leaf_target;
      p["vertices"] = t.size();
      detail::finish_construct(out, out_path, params_only, &t, p);
    };
  });

  auto* star = construct->add_subcommand("star", "Star with one long subdivided arm");
  star->add_option("--n", star_n)->required();
  star->add_option("--delta", delta)->required()->check(CLI::Range(2, 1 << 20));
  star->callback([&] {
    action = [&] {
      if (star_n > static_cast<std::int64_t>(g.max_vertices)) throw LimitError("n exceeds the vertex limit");
      const auto t = subdivided_star(static_cast<Vertex>(star_n), delta, g.limits());
      Json p;
      p["procedure"] = "subdivided star";
      p["n"] = star_n;
      p["delta"] = delta;
      detail::finish_construct(out, out_path, params_only, &t, p);
    };
  });

  auto* binary = construct->add_subcommand("binary", "Perfect binary tree");
  binary->add_option("--layers", layers)->required()->check(CLI::Range(1, 62));
  binary->callback([&] {
    action = [&] {
      const auto rt = perfect_binary(layers, g.limits());
      Json p;
      p["procedure"] = "perfect binary tree";
      p["layers"] = layers;
      p["vertices"] = rt.tree.size();
      detail::finish_construct(out, out_path, params_only, &rt.tree, p);
    };
  });

  auto* sparse = construct->add_subcommand("sparse", "1-3 tree whose leaves each witness few short lengths");
  sparse->add_option("--N", big_n)->required();
  sparse->add_option("--n", small_n)->required();
  sparse->callback([&] {
    action = [&] {
      Json p;
      p["procedure"] = "sparse witness tree";
      if (params_only) {
        detail::merge(p, to_json(sparse_witness_params(big_n, small_n, g.limits())));
        detail::emit(out, p);
        return;
      }
      const auto built = sparse_witness_tree(big_n, small_n, g.limits());
      detail::merge(p, to_json(built.params));
      detail::finish_construct(out, out_path, false, &built.tree, p);
    };
  });

  auto* from_seq = construct->add_subcommand("from-seq", "1-3 caterpillar decorated by a sequence");
  from_seq->add_option("--seq", seq_file)->required();
  from_seq->add_option("--repeats", repeats, "Number of periods along the spine")->check(CLI::PositiveNumber);
  from_seq->callback([&] {
    action = [&] {
      const auto a = detail::read_sequence_file(seq_file);
      std::optional<Tree> t;
      if (!params_only) t = sequence_to_tree(a, repeats, g.limits());
      Json p;
      p["procedure"] = "sequence embedding";
      p["a"] = a;
      p["repeats"] = repeats;
      p["vertices"] = sequence_tree_size(a, repeats);
      detail::finish_construct(out, out_path, params_only, t ? &*t : nullptr, p);
    };
  });

  auto* closure = construct->add_subcommand("closure", "Degree 3-critical graph from a 1-3 tree");
  closure->add_option("file", tree_file)->required();
  closure->callback([&] {
    action = [&] {
      const auto g3 = degree3_closure(detail::read_tree_file(tree_file));
      Json p;
      p["procedure"] = "degree 3 closure";
      p["vertices"] = g3.n;
      p["edges"] = g3.edges.size();
      if (params_only) {
        detail::emit(out, p);
      } else if (out_path.empty()) {
        write_graph(out, g3);
      } else {
        std::ostringstream s;
        write_graph(s, g3);
        detail::write_text_file(out_path, s.str());
        detail::write_text_file(out_path + ".json", p.dump(2) + "\n");
        detail::emit(out, p);
      }
    };
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Certificates of many distinct lengths");
  witness->require_subcommand(1);
  witness->fallthrough();
  Vertex root = 0;
  int marked_depth = -1;
  std::int64_t short_n = 0;

  auto* equal_depth = witness->add_subcommand("equal-depth", "One leaf witnessing many lengths among equally deep leaves");
  equal_depth->add_option("file", tree_file)->required();
  equal_depth->add_option("--root", root)->required();
  equal_depth->add_option("--delta", delta)->required()->check(CLI::Range(3, 1 << 20));
  auto* depth_opt = equal_depth->add_option("--depth", marked_depth, "Depth of the marked leaves (default deepest)");
  equal_depth->callback([&] {
    action = [&] {
      const auto t = detail::read_tree_file(tree_file);
      check_vertex(t, root, "root");
      const auto rt = RootedTree::make(t, root);
      int a = marked_depth;
      if (!*depth_opt) {
        a = 0;
        for (Vertex v : leaves(t)) a = std::max(a, rt.depth[static_cast<std::size_t>(v)]);
      }
      std::vector<Vertex> marked;
      for (Vertex v : leaves(t)) {
        if (rt.depth[static_cast<std::size_t>(v)] == a) marked.push_back(v);
      }
      if (marked.empty()) throw InputError("no leaves at depth " + std::to_string(a));
      Json j;
      j["procedure"] = "equal-depth witness";
      detail::merge(j, to_json(equal_depth_witness(rt, marked, delta)));
      detail::emit(out, j);
    };
  });

  auto* certificate = witness->add_subcommand("spectrum", "Many distinct lengths in any tree");
  certificate->add_option("file", tree_file)->required();
  certificate->callback([&] {
    action = [&] {
      Json j;
      j["procedure"] = "spectrum certificate";
      detail::merge(j, to_json(spectrum_certificate(detail::read_tree_file(tree_file))));
      detail::emit(out, j);
    };
  });

  auto* short_path = witness->add_subcommand("short-path", "One leaf witnessing many lengths up to 2N");
  short_path->add_option("file", tree_file)->required();
  short_path->add_option("--N", short_n)->required()->check(CLI::PositiveNumber);
  short_path->callback([&] {
    action = [&] {
      Json j;
      j["procedure"] = "short path witness";
      detail::merge(j, to_json(short_path_witness(detail::read_tree_file(tree_file), short_n)));
      detail::emit(out, j);
    };
  });

  // sequences
  std::int64_t shift_m = 1;
  auto* shift = app.add_subcommand("shift-set", "Distinct shifted values a_i + i or a_i - i");
  shift->add_option("--seq", seq_file)->required();
  shift->add_option("--m", shift_m)->required()->check(CLI::PositiveNumber);
  shift->callback([&] {
    action = [&] {
      const auto a = detail::read_sequence_file(seq_file);
      Json j;
      j["procedure"] = "shift set";
      j["n"] = a.size();
      j["m"] = shift_m;
      detail::merge(j, to_json(shift_set(a, shift_m)));
      detail::emit(out, j);
    };
  });

  auto* es = app.add_subcommand("es", "Longest monotone subsequence");
  es->add_option("--seq", seq_file)->required();
  es->callback([&] {
    action = [&] {
      const auto a = detail::read_sequence_file(seq_file);
      Json j;
      j["procedure"] = "monotone subsequence";
      j["n"] = a.size();
      j["guarantee"] = ceil_sqrt(static_cast<std::int64_t>(a.size()));
      detail::merge(j, to_json(erdos_szekeres(a)));
      detail::emit(out, j);
    };
  });

  // enumerate
  int enum_n = 2;
  bool audit = false;
  std::string out_dir, format = "json";
  auto* enumerate = app.add_subcommand("enumerate", "1-3 trees up to isomorphism");
  enumerate->add_option("--n", enum_n, "Largest (even) vertex count")->required()->check(CLI::Range(2, 64));
  enumerate->add_flag("--audit", audit, "Check spectrum size bounds and certificates");
  enumerate->add_option("--out-dir", out_dir, "Write each class of the largest n as an edge-list file");
  enumerate->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  enumerate->callback([&] {
    action = [&] {
      if (enum_n % 2 != 0) throw InputError("n must be even");
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for_each_one_three_tree(
            enum_n,
            [&](const CanonicalCode& c, const Tree& t) {
              const auto path = std::filesystem::path(out_dir) / (detail::hex64(code_hash(c)) + ".txt");
              detail::write_text_file(path.string(), to_edge_list(t));
            },
            g.enumeration());
      }
      if (audit) {
        const auto report = spectrum_audit(enum_n, g.enumeration());
        if (format == "csv") {
          out << "n,class_count,min_spectrum_size,bound\n";
          for (const auto& row : report.rows) {
            out << row.n << ',' << row.class_count << ',' << row.min_spectrum << ',' << row.bound << '\n';
          }
          return;
        }
        Json j;
        j["procedure"] = "spectrum audit of 1-3 trees";
        detail::merge(j, to_json(report));
        detail::emit(out, j);
        return;
      }
      std::vector<std::pair<int, std::size_t>> counts;
      for (int n = 2; n <= enum_n; n += 2) counts.emplace_back(n, one_three_codes(n, g.enumeration()).size());
      if (format == "csv") {
        out << "n,class_count\n";
        for (auto [n, c] : counts) out << n << ',' << c << '\n';
        return;
      }
      Json j;
      j["procedure"] = "1-3 tree enumeration";
      Json rows = Json::array();
      for (auto [n, c] : counts) {
        Json row;
        row["n"] = n;
        row["class_count"] = c;
        rows.push_back(std::move(row));
      }
      j["rows"] = std::move(rows);
      detail::emit(out, j);
    };
  });

  // conjecture
  auto* conjecture = app.add_subcommand("conjecture", "Evidence for the open conjectures");
  conjecture->require_subcommand(1);
  conjecture->fallthrough();
  std::int64_t cap = -1;
  PairLengthSearch search;
  std::string mode = "exhaustive";

  auto* c_value = conjecture->add_subcommand("pair-count", "Distinct values of a_i + a_j + (j - i)");
  c_value->add_option("--seq", seq_file)->required();
  auto* cap_opt = c_value->add_option("--cap", cap, "Upper bound on the terms (default max term)");
  c_value->callback([&] {
    action = [&] {
      PairLengthInstance inst;
      inst.a = detail::read_sequence_file(seq_file);
      inst.cap = *cap_opt ? cap : (inst.a.empty() ? 0 : *std::max_element(inst.a.begin(), inst.a.end()));
      Json j;
      j["procedure"] = "pair length count";
      j["n"] = inst.a.size();
      j["cap"] = inst.cap;
      j["value"] = pair_length_count(inst);
      j["shift_set_bound"] = shift_set_pair_bound(inst.a, inst.cap);
      detail::emit(out, j);
    };
  });

  auto* c_min = conjecture->add_subcommand("pair-min", "Minimum of the pair length count");
  c_min->add_option("--n", search.n)->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
  c_min->add_option("--cap", search.cap)->required()->check(CLI::NonNegativeNumber);
  c_min->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  c_min->add_option("--budget", search.budget);
  c_min->add_option("--seed", search.seed);
  c_min->callback([&] {
    action = [&] {
      search.mode = mode == "random" ? SearchMode::random : SearchMode::exhaustive;
      search.workers = g.workers;
      Json j;
      j["procedure"] = "pair length minimum";
      j["n"] = search.n;
      j["cap"] = search.cap;
      j["mode"] = mode;
      j["budget"] = search.budget;
      if (search.mode == SearchMode::random) j["seed"] = search.seed;
      detail::merge(j, to_json(pair_length_min(search)));
      detail::emit(out, j);
    };
  });

  auto* b_report = conjecture->add_subcommand("short-spectrum", "Distinct lengths up to N");
  b_report->add_option("file", tree_file)->required();
  b_report->add_option("--N", short_n)->required()->check(CLI::NonNegativeNumber);
  b_report->callback([&] {
    action = [&] {
      Json j;
      j["procedure"] = "short spectrum report";
      const auto t = detail::read_tree_file(tree_file);
      detail::merge(j, to_json(short_spectrum_report(t, short_n, g.spectrum())));
      detail::emit(out, j);
    };
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (action) action();
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace leafspec::cli
