// Copyright 2026 The ESEDS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eseds/bench.hpp"
#include "eseds/client.hpp"
#include "eseds/error.hpp"
#include "eseds/game.hpp"
#include "eseds/lab.hpp"
#include "eseds/shared_store.hpp"
#include "eseds/tcp.hpp"

namespace {

using namespace eseds;
using json = nlohmann::json;
namespace fs = std::filesystem;

// Exit codes: 0 success, 1 user or environment error, 2 internal error.
constexpr int kUserError = 1;
constexpr int kInternalError = 2;

struct Globals {
  std::string addr;
  bool embedded = false;
  std::string store = "eseds.store";
  std::string key_file;
  std::optional<std::uint64_t> seed;
  unsigned domain_bits = 16;
  std::string out;

  fs::path key_path() const {
    return key_file.empty() ? fs::path(store + ".key") : fs::path(key_file);
  }
  std::uint64_t seed_or_entropy() const {
    return seed ? *seed : CoinSource::from_entropy().bits();
  }
};

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::ostringstream out;
  for (auto b : bytes) out << std::hex << std::setw(2) << std::setfill('0') << int(b);
  return out.str();
}

std::vector<std::uint8_t> from_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw Error(ErrorCode::kFormat, "odd-length hex key");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    std::size_t used = 0;
    const int v = std::stoi(s.substr(i, 2), &used, 16);
    if (used != 2) throw Error(ErrorCode::kFormat, "bad hex in key file");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

// The client's secret: key, plaintext domain and insert style.
struct KeyFile {
  SecretKey key;
  unsigned domain_bits;
  StoreMode mode;

  Domain domain() const { return Domain::with_bits(domain_bits); }
  InsertStyle style() const {
    return mode == StoreMode::kDense ? InsertStyle::kDense : InsertStyle::kDecoupled;
  }

  void save(const fs::path& p) const {
    const json j = {{"key", to_hex(key.bytes())},
                    {"domain_bits", domain_bits},
                    {"mode", mode == StoreMode::kDense ? "dense" : "decoupled"}};
    std::ofstream f(p, std::ios::trunc);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + p.string());
    f << j.dump(2) << "\n";
    f.close();
    fs::permissions(p, fs::perms::owner_read | fs::perms::owner_write);
  }

  static KeyFile load(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot read key file " + p.string());
    try {
      const json j = json::parse(f);
      const std::string mode = j.at("mode");
      if (mode != "dense" && mode != "decoupled") {
        throw Error(ErrorCode::kFormat, "unknown mode in key file: " + mode);
      }
      return {SecretKey(from_hex(j.at("key"))), j.at("domain_bits").get<unsigned>(),
              mode == "dense" ? StoreMode::kDense : StoreMode::kDecoupled};
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kFormat, std::string("malformed key file: ") + e.what());
    }
  }
};

// A session to the store: a TCP connection, or the store file opened in
// process and written back when the command succeeds.
class Connection {
 public:
  explicit Connection(const Globals& g) {
    if (g.embedded) {
      path_ = g.store;
      shared_ = std::make_unique<SharedStore>(Store::load_file(path_, g.seed_or_entropy()));
      session_ = std::make_unique<InProcessSession>(*shared_);
    } else {
      const Endpoint ep = g.addr.empty() ? Endpoint::from_env() : Endpoint::parse(g.addr);
      session_ = std::make_unique<TcpSession>(ep.host, ep.port);
    }
  }

  Session& session() { return *session_; }

  void commit() {
    if (shared_) shared_->read([&](const Store& s) { s.save_file(path_); return 0; });
  }

 private:
  fs::path path_;
  std::unique_ptr<SharedStore> shared_;
  std::unique_ptr<Session> session_;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  return f;
}

void print_segments(const RangeResult& r) {
  std::cout << "segments:";
  for (const auto& s : r.segments) std::cout << " [" << s.lo << "," << s.hi << "]";
  std::cout << "\nindices:";
  for (auto j : r.indices()) std::cout << " " << j;
  std::cout << "\n";
}

void print_values(const char* label, const std::vector<Plaintext>& v) {
  std::cout << label << ":";
  for (auto x : v) std::cout << " " << x;
  std::cout << "\n";
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const auto v = std::stoull(item, &used);
    if (used != item.size()) throw Error(ErrorCode::kInvalidArgument, "bad list item: " + item);
    out.push_back(v);
  }
  return out;
}

std::string list_of(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

volatile std::sig_atomic_t g_stop = 0;
extern "C" void on_signal(int) { g_stop = 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Searchable encrypted data structure: store, query, bench and attack lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--addr", g.addr, "server host:port (default ESEDS_ADDR or 127.0.0.1:7487)");
  app.add_flag("--embedded", g.embedded, "open the store file in process instead of a server");
  app.add_option("--store", g.store, "store file")->capture_default_str();
  app.add_option("--key", g.key_file, "key file (default <store>.key)");
  app.add_option("--seed", g.seed, "seed for coins and rotations");
  app.add_option("--domain-bits", g.domain_bits, "plaintext domain is 0..2^bits-1")
      ->capture_default_str()
      ->check(CLI::Range(1, 63));
  app.add_option("--out", g.out, "machine-readable output file (tab separated)");

  // init
  auto* init = app.add_subcommand("init", "create an empty store and a key file");
  std::string mode = "dense";
  unsigned sparse_bits = kMaxSparseBits;
  bool force = false;
  init->add_option("--mode", mode, "dense or decoupled")
      ->check(CLI::IsMember({"dense", "decoupled"}))
      ->capture_default_str();
  init->add_option("--sparse-bits", sparse_bits, "decoupled index width")->capture_default_str();
  init->add_flag("--force", force, "overwrite existing files");

  auto* insert = app.add_subcommand("insert", "encrypt and insert plaintexts");
  std::vector<std::uint64_t> values;
  insert->add_option("values", values, "plaintexts")->required();

  auto* query = app.add_subcommand("query", "range query [a, b], cyclic when a > b");
  std::uint64_t qa = 0;
  std::uint64_t qb = 0;
  query->add_option("a", qa)->required();
  query->add_option("b", qb)->required();

  auto* topk = app.add_subcommand("topk", "k smallest plaintexts");
  std::uint64_t k = 0;
  topk->add_option("k", k)->required();

  auto* bench = app.add_subcommand("bench", "embedded range and top-k benchmark");
  BenchConfig bcfg;
  std::string db_sizes = list_of(bcfg.db_sizes);
  std::string range_sizes = list_of(bcfg.range_sizes);
  std::string k_values = list_of(bcfg.k_values);
  bench->add_option("--db-sizes", db_sizes)->capture_default_str();
  bench->add_option("--range-sizes", range_sizes)->capture_default_str();
  bench->add_option("--k-values", k_values)->capture_default_str();
  bench->add_option("--repeats", bcfg.repeats)->capture_default_str();
  bench->add_option("--warmup", bcfg.warmup)->capture_default_str();
  bench->add_option("--queries", bcfg.queries_per_repeat, "queries per repetition")
      ->capture_default_str();

  auto* attack = app.add_subcommand("attack", "run a snapshot attack against a transform");
  AttackLabConfig acfg;
  std::string target = "det";
  std::string attack_name = "frequency";
  std::string dist = "uniform";
  attack->add_option("--target", target, "main_eseds, fhope, ope or det")->capture_default_str();
  attack->add_option("--attack", attack_name, "frequency, lp, sorting, cumulative or bucketing")
      ->capture_default_str();
  attack->add_option("-n,--n", acfg.n, "multiset size")->capture_default_str();
  attack->add_option("-N,--domain-size", acfg.domain_size, "plaintext domain size")
      ->capture_default_str();
  attack->add_option("--distribution", dist, "uniform, zipf or dense")->capture_default_str();
  attack->add_option("--repetitions", acfg.repetitions)->capture_default_str();
  attack->add_option("--p", acfg.p, "norm order (1 or 2)")->capture_default_str();

  auto* game = app.add_subcommand("game", "empirical IND-CPA-DS experiment");
  GameConfig gcfg;
  std::string adversary = "position_guesser";
  std::string game_target = "main_eseds";
  game->add_option("--trials", gcfg.trials)->capture_default_str();
  game->add_option("--adversary", adversary, "position_guesser or multiset_distinguisher")
      ->capture_default_str();
  game->add_option("--target", game_target)->capture_default_str();
  game->add_option("-N,--domain-size", gcfg.domain_size)->capture_default_str();
  game->add_option("--multiset-size", gcfg.multiset_size)->capture_default_str();

  auto* serve = app.add_subcommand("serve", "serve the store file over TCP");
  RebalancerConfig rcfg;
  std::uint64_t interval_ms = static_cast<std::uint64_t>(rcfg.interval.count());
  serve->add_option("--rebalance-batch", rcfg.batch)->capture_default_str();
  serve->add_option("--rebalance-interval-ms", interval_ms)->capture_default_str();
  serve->add_option("--rebalance-trigger", rcfg.trigger_inserts, "inserts before a pass starts")
      ->capture_default_str();

  auto* rebalance = app.add_subcommand("rebalance", "complete a decoupled rebalance pass");
  std::uint64_t batch = 0;
  rebalance->add_option("--batch", batch, "entries to move; 0 runs a full pass")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: invalid_argument: " << e.what() << "\n";
    return kUserError;
  }

  try {
    if (*init) {
      const fs::path store_path = g.store;
      const fs::path key_path = g.key_path();
      if (!force && (fs::exists(store_path) || fs::exists(key_path))) {
        throw Error(ErrorCode::kInvalidArgument,
                    store_path.string() + " or its key file exists (use --force)");
      }
      const StoreMode m = mode == "dense" ? StoreMode::kDense : StoreMode::kDecoupled;
      const Store s = m == StoreMode::kDense ? Store::dense(1) : Store::decoupled(sparse_bits, 1);
      s.save_file(store_path);
      KeyFile{keygen(256), g.domain_bits, m}.save(key_path);
      std::cout << "initialized " << store_path.string() << " (" << mode
                << ", length 0); key in " << key_path.string() << "\n";
    } else if (*insert || *query || *topk) {
      const KeyFile kf = KeyFile::load(g.key_path());
      Connection conn(g);
      Client client(kf.key, kf.domain(), conn.session(), CoinSource(g.seed_or_entropy()),
                    kf.style());
      if (*insert) {
        std::uint64_t n = 0;
        for (auto v : values) n = client.insert(v);
        conn.commit();
        std::cout << "inserted " << values.size() << "; length " << n << "\n";
      } else if (*query) {
        const RangeResult r = client.search_range({qa, qb});
        print_segments(r);
        print_values("values", client.fetch(r));
      } else {
        print_values("top", client.top_k(k));
      }
    } else if (*rebalance) {
      if (g.embedded) {
        Store s = Store::load_file(g.store, g.seed_or_entropy());
        const auto c = s.rebalance_step(batch);
        s.save_file(g.store);
        std::cout << (c.active ? "pass in progress" : "pass complete") << "\n";
      } else {
        Connection conn(g);
        conn.session().rebalance_hint(batch);
        std::cout << "rebalance requested\n";
      }
    } else if (*serve) {
      const Endpoint ep = g.addr.empty() ? Endpoint::from_env() : Endpoint::parse(g.addr);
      SharedStore shared(Store::load_file(g.store, g.seed_or_entropy()), fs::path(g.store));
      rcfg.interval = std::chrono::milliseconds(interval_ms);
      Rebalancer rebalancer(shared, rcfg);
      TcpServer server(shared, ep.host, ep.port);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.start();
      std::cout << "serving " << g.store << " on " << ep.host << ":" << server.port() << std::endl;
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));
      server.stop();
      rebalancer.stop();
      shared.read([&](const Store& s) { s.save_file(g.store); return 0; });
      std::cout << "stopped; store saved\n";
    } else if (*bench) {
      bcfg.db_sizes = parse_list(db_sizes);
      bcfg.range_sizes = parse_list(range_sizes);
      bcfg.k_values = parse_list(k_values);
      bcfg.seed = g.seed.value_or(1);
      bcfg.domain_bits = g.domain_bits < 24 ? 32 : g.domain_bits;
      std::optional<std::ofstream> out;
      if (!g.out.empty()) {
        out = open_out(g.out);
        *out << "kind\tn\tparam\tenc_mean_ms\tenc_ci95_ms\tplain_mean_ms\tplain_ci95_ms"
                "\tget_cells_mean\tget_cells_max\n";
      }
      std::printf("%-6s %9s %6s %12s %10s %12s %9s %6s\n", "kind", "n", "param", "enc_ms",
                  "+-ci95", "plain_ms", "get_cell", "max");
      run_bench(bcfg, [&](const BenchRow& r) {
        std::printf("%-6s %9llu %6llu %12.5f %10.5f %12.6f %9.2f %6llu\n", r.kind.c_str(),
                    (unsigned long long)r.n, (unsigned long long)r.param, r.encrypted_ms.mean,
                    r.encrypted_ms.ci_half_width, r.plaintext_ms.mean, r.get_cells_per_query,
                    (unsigned long long)r.max_get_cells);
        std::fflush(stdout);
        if (out) {
          *out << r.kind << '\t' << r.n << '\t' << r.param << '\t' << r.encrypted_ms.mean
               << '\t' << r.encrypted_ms.ci_half_width << '\t' << r.plaintext_ms.mean << '\t'
               << r.plaintext_ms.ci_half_width << '\t' << r.get_cells_per_query << '\t'
               << r.max_get_cells << '\n';
        }
      });
    } else if (*attack) {
      acfg.target = parse_target(target);
      acfg.attack = parse_attack(attack_name);
      acfg.distribution = parse_distribution(dist);
      acfg.seed = g.seed.value_or(1);
      const AttackReport r = run_attack_lab(acfg);
      std::cout << "attack: " << to_string(acfg.attack) << "\n"
                << "target: " << to_string(acfg.target) << "\n"
                << "n: " << acfg.n << "\n"
                << "N: " << acfg.domain_size << "\n";
      if (!r.applicable) {
        std::cout << "accuracy: inapplicable (" << r.note << ")\n";
      } else {
        std::cout << "accuracy: " << r.accuracy << "\n"
                  << "std_error: " << r.std_error << "\n";
      }
      std::cout << "baseline: " << r.baseline << "\n";
      if (!g.out.empty()) {
        auto out = open_out(g.out);
        out << "attack\ttarget\tn\tN\tdistribution\trepetitions\tapplicable\taccuracy"
               "\tstd_error\tbaseline\n"
            << to_string(acfg.attack) << '\t' << to_string(acfg.target) << '\t' << acfg.n
            << '\t' << acfg.domain_size << '\t' << to_string(acfg.distribution) << '\t'
            << acfg.repetitions << '\t' << (r.applicable ? 1 : 0) << '\t' << r.accuracy << '\t'
            << r.std_error << '\t' << r.baseline << '\n';
      }
    } else if (*game) {
      gcfg.adversary = parse_adversary(adversary);
      gcfg.target = parse_target(game_target);
      gcfg.seed = g.seed.value_or(1);
      const GameReport r = run_game(gcfg);
      std::cout << "adversary: " << to_string(gcfg.adversary) << "\n"
                << "target: " << to_string(gcfg.target) << "\n"
                << "trials: " << r.trials << "\n"
                << "success_rate: " << r.success_rate << "\n"
                << "baseline: " << r.mean_baseline << "\n"
                << "advantage: " << r.advantage << "\n"
                << "std_error: " << r.std_error << "\n"
                << "ci95: " << r.ci_half_width << "\n";
      if (!g.out.empty()) {
        auto out = open_out(g.out);
        out << "adversary\ttarget\ttrials\tsuccess_rate\tbaseline\tadvantage\tstd_error\tci95\n"
            << to_string(gcfg.adversary) << '\t' << to_string(gcfg.target) << '\t' << r.trials
            << '\t' << r.success_rate << '\t' << r.mean_baseline << '\t' << r.advantage << '\t'
            << r.std_error << '\t' << r.ci_half_width << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kInternal ? kInternalError : kUserError;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kInternalError;
  }
  return 0;
}
