// mbrctl: build, encode, repair, collect, verify and compare
// minimum-bandwidth regenerating storage codes on a simulated cluster of
// flat files. Node ids are 1-based on the command line and on disk.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbr/cluster.hpp"

using namespace mbr;

namespace {

std::vector<int> to_internal(const std::vector<int>& ids, int n,
                             const std::string& what) {
  std::vector<int> out;
  for (int id : ids) {
    if (id < 1 || id > n)
      throw CLI::ValidationError(what, "node id " + std::to_string(id) +
                                           " out of range 1.." + std::to_string(n));
    out.push_back(id - 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MBR storage code toolkit"};
  app.require_subcommand(1);

  std::string scheme, out_dir = ".", manifest_path, in_file, out_file;
  int n = 0, k = 0, d = 0, failed = 0;
  std::optional<int> field_bits;
  std::vector<int> helpers, nodes;
  std::vector<std::string> schemes;
  bool exhaustive = false;
  std::uint64_t seed = 1;

  auto* b = app.add_subcommand("build", "build a code instance and write its manifest");
  b->add_option("--scheme", scheme,
                "pm | rbt | cons-a | cons-b | concat-rbt | replicate | near-replicate")
      ->required();
  b->add_option("--n", n, "number of nodes")->required();
  b->add_option("--k", k, "data-collection degree")->required();
  b->add_option("--d", d, "repair degree (rbt: omit or n-1)");
  b->add_option("--field-bits", field_bits, "override base field GF(2^bits)");
  b->add_option("--out", out_dir, "output directory");

  auto* e = app.add_subcommand("encode", "encode a file into n shards");
  e->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
  e->add_option("--in", in_file, "input file")->required()->check(CLI::ExistingFile);
  e->add_option("--out", out_dir, "shard directory");

  auto* r = app.add_subcommand("repair", "regenerate a failed node's shard");
  r->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
  r->add_option("--failed", failed, "failed node id")->required();
  r->add_option("--helpers", helpers, "d helper ids a,b,c")->required()->delimiter(',');
  r->add_option("--out", out_dir, "shard directory");

  auto* c = app.add_subcommand("collect", "recover the file from k shards");
  c->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
  c->add_option("--nodes", nodes, "k node ids a,b")->required()->delimiter(',');
  c->add_option("--file", out_file, "output file")->required();
  c->add_option("--out", out_dir, "shard directory");

  auto* v = app.add_subcommand("verify", "exhaustively check repair / collection");
  v->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
  v->add_flag("--exhaustive", exhaustive, "require full enumeration (n <= 12)");
  v->add_option("--seed", seed, "test message seed");

  auto* cmp = app.add_subcommand("compare", "tabulate schemes at one parameter point");
  cmp->add_option("--schemes", schemes, "comma-separated scheme list")
      ->required()
      ->delimiter(',');
  cmp->add_option("--n", n)->required();
  cmp->add_option("--k", k)->required();
  cmp->add_option("--d", d)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*b) {
      Manifest m = make_manifest(scheme, n, k, d, field_bits);
      std::filesystem::create_directories(out_dir);
      save_manifest(m, out_dir + "/manifest.json");
      std::cout << manifest_to_json(m).dump(2) << "\n";
      return 0;
    }
    if (*e) {
      Manifest m = load_manifest(manifest_path);
      CodeInstance inst = build_from_manifest(m);
      std::filesystem::create_directories(out_dir);
      encode_file(m, inst, read_file_bytes(in_file), out_dir);
      save_manifest(m, manifest_path);
      std::cout << "wrote " << m.n << " shards, " << m.stripes << " stripes\n";
      return 0;
    }
    if (*r) {
      Manifest m = load_manifest(manifest_path);
      CodeInstance inst = build_from_manifest(m);
      auto res = repair_shard(m, inst, out_dir, to_internal({failed}, m.n, "--failed")[0],
                              to_internal(helpers, m.n, "--helpers"));
      nlohmann::json j{{"failed", failed},
                       {"symbols_transferred", res.symbols_transferred},
                       {"helper_reads", res.helper_reads},
                       {"hbt", res.hbt},
                       {"rbt", res.rbt}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*c) {
      Manifest m = load_manifest(manifest_path);
      CodeInstance inst = build_from_manifest(m);
      auto bytes = collect_file(m, inst, out_dir, to_internal(nodes, m.n, "--nodes"));
      write_file_bytes(out_file, bytes);
      std::cout << "recovered " << bytes.size() << " bytes\n";
      return 0;
    }
    if (*v) {
      Manifest m = load_manifest(manifest_path);
      CodeInstance inst = build_from_manifest(m);
      if (exhaustive && m.n > 12)
        throw CLI::ValidationError("--exhaustive", "requires n <= 12");
      auto j = verify_report(inst, 20, seed);
      std::cout << j.dump(2) << "\n";
      return j["ok"].get<bool>() ? 0 : 1;
    }
    if (*cmp) {
      auto j = compare_table(schemes, n, k, d);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
