// nvtool: command-line front end for the nv library.
//
// Exit codes: 0 success (or "true" for equal/verify), 1 "false" for
// equal/verify, 2 usage or data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "nv/nv.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a temporary sibling, then renames over the target.
void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw UsageError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot rename onto '" + path.string() + "'");
  }
}

// Element files use the pair grammar; a file containing "=>" is read as a tree pair.
nv::Element load_element(const std::string& path, const nv::Limits& limits) {
  const std::string text = read_file(path);
  try {
    if (text.find("=>") != std::string::npos) return nv::io::parse_tree_pair(text, limits);
    return nv::io::parse_element(text, limits);
  } catch (const nv::ParseError& e) {
    throw nv::ParseError(e.line(), e.column(), path + ": " + std::string(e.what()));
  }
}

std::pair<std::size_t, std::size_t> parse_index_pair(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  auto fail = [&]() -> std::pair<std::size_t, std::size_t> {
    throw UsageError(flag + " expects two comma-separated indices, got '" + text + "'");
  };
  if (comma == std::string::npos) return fail();
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const unsigned long x = std::stoul(a, &used);
    if (used != a.size()) return fail();
    const unsigned long y = std::stoul(b, &used);
    if (used != b.size()) return fail();
    return {x, y};
  } catch (const std::logic_error&) {
    return fail();
  }
}

std::string report_text(const nv::FactorizationReport& r) {
  std::ostringstream out;
  out << "input: " << nv::to_string(r.input) << "\n";
  out << "verified: " << (r.verified ? "true" : "false") << "\n";
  out << "transpositions: " << r.word.size() << "\n";
  out << "proper: " << r.proper_factors << "\n";
  out << "split_transpositions: " << r.split_transpositions << "\n";
  out << "small_bakers: " << r.small_bakers << "\n";
  out << "levels: " << r.intermediate_bakers.size() << "\n";
  for (std::size_t level = 0; level < r.intermediate_bakers.size(); ++level) {
    out << "level " << level << ":";
    for (const auto& b : r.intermediate_bakers[level]) out << " [" << b.support.to_string() << "]";
    out << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elements of the Brin-Thompson groups nV and baker's map factorization"};
  app.require_subcommand(1);
  unsigned max_exponent = nv::kDefaultMaxExponent;
  app.add_option("--max-exponent", max_exponent, "Per-axis exponent guard")->capture_default_str();

  std::string in_a, in_b, out_path;

  auto* compose = app.add_subcommand("compose", "OUT = A then B (A applied first)");
  compose->add_option("A", in_a)->required();
  compose->add_option("B", in_b)->required();
  compose->add_option("-o,--output", out_path)->required();

  auto* inv = app.add_subcommand("inverse", "OUT = inverse of A");
  inv->add_option("A", in_a)->required();
  inv->add_option("-o,--output", out_path)->required();

  bool witness = false;
  auto* equal = app.add_subcommand("equal", "Exit 0 if A and B are the same map, 1 otherwise");
  equal->add_option("A", in_a)->required();
  equal->add_option("B", in_b)->required();
  equal->add_flag("--witness", witness, "Print a point where A and B differ");

  std::string support_text, axes_text;
  std::size_t dim = 2;
  auto* baker = app.add_subcommand("baker", "Construct a baker's map");
  baker->add_option("--support", support_text, "Support brick, e.g. 1/2^1,2/2^2")->required();
  baker->add_option("--axes", axes_text, "Split and merge axes, e.g. 0,1")->default_val("0,1");
  baker->add_option("--dim", dim)->default_val(2);
  baker->add_option("-o,--output", out_path)->required();

  std::string ambient_path, swap_text;
  auto* transpose = app.add_subcommand("transpose", "Construct a transposition of two ambient bricks");
  transpose->add_option("--ambient", ambient_path, "Partition file")->required();
  transpose->add_option("--swap", swap_text, "Indices of the swapped bricks in file order, e.g. 1,2")->required();
  transpose->add_option("-o,--output", out_path)->required();

  std::string report_path, epsilon_text;
  auto* factor = app.add_subcommand("factor-baker", "Write a baker's map as a word of proper transpositions");
  factor->add_option("A", in_a)->required();
  factor->add_option("-o,--output", out_path)->required();
  factor->add_option("--report", report_path);
  factor->add_option("--epsilon", epsilon_text, "Shrink below this diameter first (k/2^e)");

  auto* verify = app.add_subcommand("verify", "Exit 0 if the product of WORD equals TARGET, 1 otherwise");
  verify->add_option("WORD", in_a)->required();
  verify->add_option("TARGET", in_b)->required();

  auto* render = app.add_subcommand("render", "Draw a 2D element as SVG");
  render->add_option("A", in_a)->required();
  render->add_option("-o,--output", out_path)->required();

  unsigned depth = 3;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  auto* random = app.add_subcommand("random", "Generate seeded random elements");
  random->add_option("--dim", dim)->default_val(2);
  random->add_option("--depth", depth)->default_val(3);
  random->add_option("--seed", seed)->default_val(0);
  random->add_option("--count", count)->default_val(1);
  random->add_option("-o,--output", out_path, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  const nv::Limits limits{max_exponent};
  try {
    if (*compose) {
      const auto f = load_element(in_a, limits);
      const auto g = load_element(in_b, limits);
      write_file_atomic(out_path, nv::io::serialize_element(nv::then(f, g, limits)));
    } else if (*inv) {
      write_file_atomic(out_path, nv::io::serialize_element(nv::inverse(load_element(in_a, limits))));
    } else if (*equal) {
      const auto diff = nv::find_difference(load_element(in_a, limits), load_element(in_b, limits));
      if (diff && witness) std::cout << nv::to_string(*diff) << "\n";
      return diff ? kFalse : kTrue;
    } else if (*baker) {
      const auto [i, j] = parse_index_pair(axes_text, "--axes");
      const nv::BakerSpec spec{nv::io::parse_brick(support_text, dim, limits), i, j};
      write_file_atomic(out_path, nv::io::serialize_element(nv::make_baker(spec, dim, limits)));
    } else if (*transpose) {
      const auto bricks = nv::io::parse_partition(read_file(ambient_path), limits);
      const auto [p, q] = parse_index_pair(swap_text, "--swap");
      if (p >= bricks.size() || q >= bricks.size()) throw UsageError("--swap index out of range");
      const nv::TranspositionSpec spec{nv::Partition::trusted(bricks), bricks[p], bricks[q]};
      write_file_atomic(out_path, nv::io::serialize_element(nv::make_transposition(spec)));
    } else if (*factor) {
      const auto spec = nv::is_baker_form(load_element(in_a, limits));
      if (!spec) throw UsageError(in_a + ": not a baker's map");
      nv::FactorOptions options;
      options.limits = limits;
      if (!epsilon_text.empty()) options.epsilon = nv::Dyadic::parse(epsilon_text);
      const auto report = nv::factor_baker(*spec, options);
      if (!report.verified) throw UsageError("factorization failed verification");
      write_file_atomic(out_path, nv::io::serialize_word(report.word));
      if (!report_path.empty()) write_file_atomic(report_path, report_text(report));
    } else if (*verify) {
      const auto word = nv::io::parse_word(read_file(in_a), limits);
      return nv::verify_word(word, load_element(in_b, limits), limits) ? kTrue : kFalse;
    } else if (*render) {
      write_file_atomic(out_path, nv::io::render_svg(load_element(in_a, limits)));
    } else if (*random) {
      fs::create_directories(out_path);
      for (std::size_t k = 0; k < count; ++k) {
        const auto e = nv::random_element({dim, depth, seed + k});
        std::ostringstream name;
        name << "element-" << std::setw(4) << std::setfill('0') << k << ".nv";
        write_file_atomic(fs::path(out_path) / name.str(), nv::io::serialize_element(e));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "nvtool: error: " << e.what() << "\n";
    return kError;
  }
  return kTrue;
}
