#include "abelk/cli.hpp"

#include "CLI11.hpp"
#include "abelk/gallery.hpp"

#include <chrono>
#include <filesystem>
#include <functional>

namespace abelk {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AbGroupDesc load_group(const std::string& path) {
  try {
    return parse_group_file(read_file(path)).desc;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

std::vector<Witness> load_witnesses(const std::vector<std::string>& paths) {
  std::vector<Witness> out;
  for (const auto& p : paths) {
    try {
      auto d = parse_document(read_file(p));
      if (d.witnesses.empty()) throw InputError(p + ": no witness statement");
      out.insert(out.end(), d.witnesses.begin(), d.witnesses.end());
    } catch (const ParseError& e) {
      throw InputError(p + ":" + e.what());
    }
  }
  return out;
}

std::string rank_text(const KGroupDesc& k) {
  const auto r = finite_rank(k);
  return "free rank " + (r ? std::to_string(*r) : std::string("omega"));
}

VerdictLine comparison_line(const std::string& label, const ComparisonResult& r) {
  return {label, verdict_name(r), explanation(r)};
}

std::vector<long> parse_coords(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("malformed element coordinate '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of abelian group C*-algebras: K-groups, types and unitary groups", "abelk"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Report report;
  std::function<int()> action;
  std::string file_a, file_b, witness_file, gallery_config, element;
  std::vector<std::string> witness_files;
  std::size_t stage = 0;
  unsigned long prime = 0;
  bool no_config = false;

  auto* k1_cmd = app.add_subcommand("k1", "K1 of C*(G) as a sum of odd exterior powers");
  k1_cmd->add_option("group", file_a, "Group file")->required();
  k1_cmd->callback([&] {
    action = [&] {
      report.inputs = {file_a};
      const auto k = k1(load_group(file_a));
      report.verdicts.push_back({"k1", rank_text(k), describe(k)});
      return 0;
    };
  });

  auto* k0_cmd = app.add_subcommand("k0", "K0 of C*(G) as a sum of even exterior powers");
  k0_cmd->add_option("group", file_a, "Group file")->required();
  k0_cmd->callback([&] {
    action = [&] {
      report.inputs = {file_a};
      const auto k = k0(load_group(file_a));
      report.verdicts.push_back({"k0", rank_text(k), describe(k)});
      return 0;
    };
  });

  auto* type_cmd = app.add_subcommand("type", "Type of a rank-1 group, or of the exterior square of a rank-2 group");
  type_cmd->add_option("group", file_a, "Group file")->required();
  type_cmd->callback([&] {
    action = [&] {
      report.inputs = {file_a};
      const Tower t = to_tower(load_group(file_a).free_part);
      if (t.rank == 1) {
        const auto chi = characteristic(t, GroupElement{0, IntVector::Ones(1)});
        report.verdicts.push_back({"type", rank1_type(t).str(), "characteristic of the generator " + chi.str()});
      } else if (t.rank == 2) {
        report.verdicts.push_back({"wedge2-type", wedge2_type_rank2(t).str(), "type of the exterior square"});
      } else {
        throw InputError("type needs a group of rank 1 or 2, got rank " + std::to_string(t.rank));
      }
      return 0;
    };
  });

  auto* height_cmd = app.add_subcommand("height", "p-height of an element");
  height_cmd->add_option("group", file_a, "Group file")->required();
  height_cmd->add_option("--prime,-p", prime, "Prime")->required();
  height_cmd->add_option("--element,-e", element, "Comma-separated coordinates (default: first basis vector)");
  height_cmd->add_option("--stage,-s", stage, "Stage the coordinates live in");
  height_cmd->callback([&] {
    action = [&] {
      report.inputs = {file_a};
      if (!is_prime(Integer(prime))) throw InputError(std::to_string(prime) + " is not prime");
      const Tower t = to_tower(load_group(file_a).free_part);
      IntVector v = IntVector::Zero(t.rank);
      if (element.empty()) {
        v(0) = 1;
      } else {
        const auto c = parse_coords(element);
        if (static_cast<int>(c.size()) != t.rank)
          throw InputError("element has " + std::to_string(c.size()) + " coordinates, group has rank " +
                           std::to_string(t.rank));
        for (int i = 0; i < t.rank; ++i) v(i) = c[static_cast<std::size_t>(i)];
      }
      const GroupElement e{stage, v};
      report.verdicts.push_back({"height", height(t, e, prime).str(),
                                 "p = " + std::to_string(prime) + ", element " + to_string(v) + " at stage " +
                                     std::to_string(stage)});
      return 0;
    };
  });

  for (const std::string name : {"compare-unitary", "compare-k1"}) {
    auto* cmd = app.add_subcommand(name, name == "compare-unitary" ? "Compare unitary groups of C*(G1) and C*(G2)"
                                                                   : "Compare K1 of C*(G1) and C*(G2)");
    cmd->add_option("group1", file_a, "First group file")->required();
    cmd->add_option("group2", file_b, "Second group file")->required();
    cmd->add_option("--witness,-w", witness_files, "Witness file (repeatable)");
    cmd->callback([&, name] {
      action = [&, name] {
        report.inputs = {file_a, file_b};
        for (const auto& w : witness_files) report.inputs.push_back(w);
        const auto a = load_group(file_a);
        const auto b = load_group(file_b);
        const auto ws = load_witnesses(witness_files);
        const auto r = name == "compare-unitary" ? compare_unitary(a, b, ws) : compare_k1(a, b, ws);
        report.verdicts.push_back(comparison_line(name, r));
        return 0;
      };
    });
  }

  auto* witness_cmd = app.add_subcommand("check-witness", "Validate witness maps");
  witness_cmd->add_option("witness", witness_file, "Witness file")->required();
  witness_cmd->callback([&] {
    action = [&] {
      report.inputs = {witness_file};
      const auto ws = load_witnesses({witness_file});
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const auto r = check_witness_report(ws[i]);
        report.verdicts.push_back({"witness #" + std::to_string(i + 1), r.valid ? "valid" : "invalid", r.detail});
      }
      return 0;
    };
  });

  auto* gallery_cmd = app.add_subcommand("verify-gallery", "Verify the built-in examples");
  gallery_config = std::string(ABELK_DATA_DIR) + "/fuchs_loonstra.grp";
  gallery_cmd->add_option("--gallery-config", gallery_config, "Configuration with the rank-2 pair and its witness");
  gallery_cmd->add_flag("--no-config", no_config, "Skip entries that need the configuration");
  gallery_cmd->callback([&] {
    action = [&] {
      std::optional<GalleryConfig> cfg;
      std::vector<std::string> notices;
      if (!no_config) {
        report.inputs = {gallery_config};
        try {
          cfg = load_gallery_config(gallery_config);
        } catch (const MissingConfiguration& e) {
          notices.push_back(e.what());
        }
      }
      const Gallery g = builtin_gallery(cfg);
      const auto results = verify_gallery(g);
      const auto inputs = report.inputs;
      report = gallery_report(g, results);
      report.inputs = inputs;
      report.notices.insert(report.notices.begin(), notices.begin(), notices.end());
      const bool failed = std::any_of(results.begin(), results.end(),
                                      [](const ClaimResult& c) { return c.outcome == Outcome::Fail; });
      return failed ? 1 : 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  report.command = app.get_subcommands().front()->get_name();
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (format == "json")
    out << to_json(report).dump(2) << "\n";
  else
    out << to_text(report);
  return code;
}

}  // namespace abelk
