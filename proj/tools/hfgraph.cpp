#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hfgraph/blocks.hpp"
#include "hfgraph/gradings.hpp"
#include "hfgraph/plumbing.hpp"

namespace fs = std::filesystem;
using namespace hfgraph;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kCap = 3 };

std::string h1_string(const H1Order& h) {
  return h.kind == H1Order::Finite ? h.value.str() : "infinite";
}

void print_module(std::ostream& os, const DModule& m, bool dump_it, bool per_summand) {
  os << "generators = " << m.num_generators() << "\n";
  for (const auto& [occ, n] : summand_profile(m)) {
    os << "summand";
    for (int o : occ) os << " " << o;
    os << " : " << n << "\n";
  }
  if (!dump_it && !per_summand) return;
  if (!per_summand) {
    dump(os, m);
    return;
  }
  for (const DModule& s : summand_split(m)) {
    os << "--\n";
    dump(os, s);
  }
}

struct ComputeFlags {
  bool trace = false, h1 = false, per_summand = false;
  std::size_t cap = ComputeOptions{}.generator_cap;
  int twist_site = 0;
};

ComputeOptions options_of(const ComputeFlags& f, const PlumbingGraph& g) {
  ComputeOptions opt;
  opt.generator_cap = f.cap;
  opt.twist_site = f.twist_site;
  if (f.trace)
    opt.trace = [&g](const Step& s, std::size_t n) { std::cerr << "step " << step_string(g, s) << " -> " << n << "\n"; };
  return opt;
}

int cmd_compute(const std::string& path, const ComputeFlags& f) {
  PlumbingGraph g = parse_file(path);
  ComputeResult r = compute(g, options_of(f, g));
  if (r.rank) {
    std::cout << "rank = " << *r.rank << "\n";
  } else {
    std::cout << "open =";
    for (const auto& o : r.open) std::cout << " " << g.vertices[o.vertex].id << "(fiber=" << o.fiber << ")";
    std::cout << "\n";
    print_module(std::cout, r.module, true, f.per_summand);
  }
  if (f.h1) std::cout << "h1 = " << h1_string(h1_order(g)) << "\n";
  return kOk;
}

int cmd_h1(const std::string& path) {
  std::cout << "h1 = " << h1_string(h1_order(parse_file(path))) << "\n";
  return kOk;
}

int cmd_block(const std::string& name, bool dump_it, bool per_summand) {
  print_module(std::cout, BlockCatalog::instance().get(name), dump_it, per_summand);
  return kOk;
}

// "a>b,c>d": the first arrow from a to b, and so on.
std::vector<std::size_t> preferred_arrows(const DModule& m, const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto gt = item.find('>');
    if (gt == std::string::npos) throw std::invalid_argument("--prefer item without '>': " + item);
    auto s = m.find(item.substr(0, gt)), d = m.find(item.substr(gt + 1));
    if (!s || !d) throw std::invalid_argument("--prefer names an unknown generator: " + item);
    auto it = std::find_if(m.arrows.begin(), m.arrows.end(), [&](const Arrow& a) { return a.src == *s && a.dst == *d; });
    if (it == m.arrows.end()) throw std::invalid_argument("--prefer names a missing arrow: " + item);
    out.push_back(static_cast<std::size_t>(it - m.arrows.begin()));
  }
  return out;
}

int cmd_gradings(const std::string& name, const std::string& base, const std::string& prefer) {
  const DModule& whole = BlockCatalog::instance().get(name);
  for (const DModule& s : summand_split(whole)) {
    auto b = s.find(base);
    if (!b) continue;
    PropagationResult r = propagate(s, *b, prefer.empty() ? std::vector<std::size_t>{} : preferred_arrows(s, prefer));
    for (std::size_t g = 0; g < s.num_generators(); ++g) std::cout << s.name(g) << " " << g_string(r.gradings[g]) << "\n";
    for (const auto& p : independent_generators(r.periodic)) std::cout << "P " << g_string(p) << "\n";
    return kOk;
  }
  throw std::invalid_argument("no generator named " + base + " in " + name);
}

struct BatchRow {
  std::string file, rank, h1, lspace;
};

int cmd_batch(const std::string& dir, const std::string& csv, const ComputeFlags& f, unsigned threads) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".graph") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<BatchRow> rows(files.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex err_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      BatchRow& row = rows[i];
      row.file = files[i].filename().string();
      try {
        PlumbingGraph g = parse_file(files[i].string());
        ComputeOptions opt;
        opt.generator_cap = f.cap;
        opt.twist_site = f.twist_site;
        ComputeResult r = compute(g, opt);
        H1Order h = h1_order(g);
        row.rank = r.rank ? std::to_string(*r.rank) : "bordered";
        row.h1 = h1_string(h);
        if (r.rank && h.kind == H1Order::Finite) row.lspace = h.value == *r.rank ? "1" : "0";
      } catch (const ParseError&) {
        row.rank = "parse-error";
      } catch (const CapExceeded&) {
        row.rank = "cap-exceeded";
      }
      std::lock_guard lock(err_mu);
      std::cerr << "[" << ++done << "/" << files.size() << "] " << row.file << "\n";
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  if (!csv.empty()) {
    file.open(csv);
    if (!file) throw std::runtime_error("cannot write " + csv);
  }
  std::ostream& os = csv.empty() ? std::cout : file;
  os << "file,rank,h1,lspace\n";
  for (const auto& r : rows) os << r.file << "," << r.rank << "," << r.h1 << "," << r.lspace << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hat Heegaard Floer ranks of graph manifolds from plumbing graphs"};
  app.require_subcommand(1);

  ComputeFlags flags;
  auto add_compute_flags = [&](CLI::App* c) {
    c->add_option("--cap", flags.cap, "Abort once an intermediate module exceeds this many generators")
        ->check(CLI::PositiveNumber);
    c->add_option("--twist-site", flags.twist_site, "Vertex boundary that receives the Euler twists")
        ->check(CLI::NonNegativeNumber);
  };

  std::string path, name, base, prefer, csv;
  bool dump_it = false;
  unsigned threads = std::thread::hardware_concurrency();

  auto* compute_cmd = app.add_subcommand("compute", "Rank for a closed graph, reduced module for a bordered one");
  compute_cmd->add_option("file", path, "Graph file")->required();
  compute_cmd->add_flag("--trace", flags.trace, "Print every assembly step and its generator count to stderr");
  compute_cmd->add_flag("--h1", flags.h1, "Also print |H1|");
  compute_cmd->add_flag("--per-summand", flags.per_summand, "Split bordered dumps by occupancy");
  add_compute_flags(compute_cmd);

  auto* h1_cmd = app.add_subcommand("h1", "Order of H1 from the intersection form");
  h1_cmd->add_option("file", path, "Graph file")->required();

  auto* block_cmd = app.add_subcommand("block", "Generator counts or a dump of a named block");
  block_cmd->add_option("name", name, "Block name")->required()->check(CLI::IsMember(BlockCatalog::names()));
  block_cmd->add_flag("--dump", dump_it, "Dump generators and arrows");
  block_cmd->add_flag("--per-summand", flags.per_summand, "Dump each occupancy summand separately");

  auto* grad_cmd = app.add_subcommand("gradings", "Relative gradings of the summand containing a base generator");
  grad_cmd->add_option("name", name, "Block name")->required()->check(CLI::IsMember(BlockCatalog::names()));
  grad_cmd->add_option("--base", base, "Base generator")->required();
  grad_cmd->add_option("--prefer", prefer, "Arrows to use first in the spanning tree, as src>dst,...");

  auto* batch_cmd = app.add_subcommand("batch", "Run every .graph file in a directory and emit CSV");
  batch_cmd->add_option("dir", path, "Directory")->required()->check(CLI::ExistingDirectory);
  batch_cmd->add_option("--csv", csv, "Write the CSV here instead of stdout");
  batch_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  add_compute_flags(batch_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*compute_cmd) return cmd_compute(path, flags);
    if (*h1_cmd) return cmd_h1(path);
    if (*block_cmd) return cmd_block(name, dump_it, flags.per_summand);
    if (*grad_cmd) return cmd_gradings(name, base, prefer);
    if (*batch_cmd) return cmd_batch(path, csv, flags, threads);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
