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

#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <thread>

#include "eseds/client.hpp"
#include "eseds/tcp.hpp"
#include "support/errors.hpp"
#include "support/harness.hpp"

namespace eseds {
namespace {

using harness::code_of;

Ciphertext cell_for(Plaintext m) {
  return encrypt_tagged(harness::test_key(), {m, 0}, Domain(16));
}

TEST(InProcess, Requests) {
  SharedStore shared(Store::dense(1));
  InProcessSession s(shared);
  EXPECT_EQ(s.length(), 0u);
  s.insert_at(0, cell_for(3));
  EXPECT_EQ(s.length(), 1u);
  EXPECT_EQ(decrypt_tagged(harness::test_key(), s.get_cell(0)).value, 3u);
  EXPECT_EQ(code_of([&] { s.get_cell(5); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { s.insert_between(kSentinel, 0, cell_for(1)); }),
            ErrorCode::kWrongMode);
  EXPECT_EQ(code_of([&] { s.save(); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(s.stats().cells_fetched, 2u);
  EXPECT_EQ(s.stats().requests_sent, 7u);
}

TEST(InProcess, SaveWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "eseds_transport_save.bin";
  SharedStore shared(Store::decoupled(64, 1), path);
  InProcessSession s(shared);
  s.insert_between(kSentinel, kSentinel, cell_for(4));
  s.save();
  const Store loaded = Store::load_file(path);
  EXPECT_TRUE(shared.read([&](const Store& st) { return st == loaded; }));
  std::filesystem::remove(path);
}

class TcpTest : public ::testing::Test {
 protected:
  void SetUp() override { server_.start(); }
  void TearDown() override { server_.stop(); }

  SharedStore shared_{Store::dense(5)};
  TcpServer server_{shared_, "127.0.0.1", 0};
};

TEST_F(TcpTest, Requests) {
  TcpSession s("127.0.0.1", server_.port());
  EXPECT_EQ(s.length(), 0u);
  s.insert_at(0, cell_for(9));
  EXPECT_EQ(decrypt_tagged(harness::test_key(), s.get_cell(0)).value, 9u);
  EXPECT_EQ(code_of([&] { s.get_cell(5); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(s.length(), 1u);
}

TEST_F(TcpTest, ConcurrentReaders) {
  {
    TcpSession w("127.0.0.1", server_.port());
    for (Plaintext m = 0; m < 16; ++m) w.insert_at(0, cell_for(m));
  }
  std::vector<std::thread> readers;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      TcpSession r("127.0.0.1", server_.port());
      for (int i = 0; i < 200; ++i) r.get_cell(i % 16);
      ++ok;
    });
  }
  for (auto& t : readers) t.join();
  EXPECT_EQ(ok.load(), 4);
}

TEST_F(TcpTest, WritersSerialize) {
  std::vector<std::thread> writers;
  for (int t = 0; t < 2; ++t) {
    writers.emplace_back([&, t] {
      TcpSession w("127.0.0.1", server_.port());
      for (int i = 0; i < 100; ++i) w.insert_at(0, cell_for(t));
    });
  }
  for (auto& t : writers) t.join();
  TcpSession r("127.0.0.1", server_.port());
  ASSERT_EQ(r.length(), 200u);
  std::uint64_t ones = 0;
  for (std::uint64_t j = 0; j < 200; ++j) {
    ones += decrypt_tagged(harness::test_key(), r.get_cell(j)).value;
  }
  EXPECT_EQ(ones, 100u);
}

TEST_F(TcpTest, MalformedFrameClosesWithError) {
  {
    TcpSession w("127.0.0.1", server_.port());
    w.insert_at(0, cell_for(1));
  }
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(server_.port());
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  ASSERT_EQ(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr), 0);
  const std::uint8_t junk[] = {0, 0, 0, 2, 0x7e, 0x00};
  ASSERT_EQ(::write(fd, junk, sizeof junk), static_cast<ssize_t>(sizeof junk));
  std::vector<std::uint8_t> reply;
  std::uint8_t buf[512];
  for (;;) {
    const ssize_t got = ::read(fd, buf, sizeof buf);
    if (got <= 0) break;
    reply.insert(reply.end(), buf, buf + got);
  }
  ::close(fd);
  const auto msg = wire::decode(reply);
  ASSERT_TRUE(std::holds_alternative<wire::ErrorReply>(msg));
  EXPECT_EQ(std::get<wire::ErrorReply>(msg).code, ErrorCode::kProtocol);
  EXPECT_EQ(shared_.read([](const Store& s) { return s.length(); }), 1u);
}

TEST_F(TcpTest, MatchesInProcess) {
  SharedStore local(Store::dense(5));
  InProcessSession in(local);
  TcpSession tcp("127.0.0.1", server_.port());
  const auto key = harness::test_key();
  const Domain dom(16);
  Client a(key, dom, in, CoinSource(3));
  Client b(key, dom, tcp, CoinSource(3));
  CoinSource vals(4);
  for (int i = 0; i < 40; ++i) {
    const Plaintext m = vals.uniform(16);
    a.insert(m);
    b.insert(m);
  }
  for (Plaintext lo = 0; lo < 16; lo += 3) {
    for (Plaintext hi = 0; hi < 16; hi += 5) {
      EXPECT_EQ(a.search_range({lo, hi}), b.search_range({lo, hi}));
    }
  }
  EXPECT_EQ(a.top_k(10), b.top_k(10));
  EXPECT_EQ(in.stats().cells_fetched, tcp.stats().cells_fetched);
}

TEST(Tcp, ConnectFailureIsTransportError) {
  // Bind then close to get a port with nothing listening.
  std::uint16_t port = 0;
  {
    SharedStore shared(Store::dense(1));
    TcpServer s(shared, "127.0.0.1", 0);
    port = s.port();
  }
  EXPECT_EQ(code_of([&] { TcpSession("127.0.0.1", port); }), ErrorCode::kTransport);
}

TEST(Endpoint, Parse) {
  EXPECT_EQ(Endpoint::parse("10.0.0.1").host, "10.0.0.1");
  EXPECT_EQ(Endpoint::parse("10.0.0.1").port, kDefaultPort);
  EXPECT_EQ(Endpoint::parse("h:99").port, 99);
  EXPECT_EQ(Endpoint::parse(":99").host, "127.0.0.1");
  EXPECT_EQ(code_of([] { Endpoint::parse("h:notaport"); }), ErrorCode::kInvalidArgument);
}

// Every byte the client sends is an opcode, an index or a ciphertext; the key
// never appears in a request frame.
TEST(Transport, NoKeyBytesOnTheWire) {
  harness::Rig rig(keygen(), Domain(64), Store::dense(2), 3, InsertStyle::kDense);
  const auto key = rig.key.bytes();
  bool leaked = false;
  std::uint64_t frames = 0;
  rig.session.set_frame_tap([&](std::span<const std::uint8_t> f) {
    ++frames;
    for (std::size_t w : {std::size_t{8}, key.size()}) {
      const auto probe = key.first(w);
      if (std::search(f.begin(), f.end(), probe.begin(), probe.end()) != f.end()) {
        leaked = true;
      }
    }
  });
  CoinSource vals(9);
  for (int i = 0; i < 100; ++i) rig.client.insert(vals.uniform(64));
  rig.client.search_range({10, 40});
  rig.client.top_k(5);
  EXPECT_GT(frames, 100u);
  EXPECT_FALSE(leaked);
}

// The background worker re-indexes while the client works; rotations land
// only on the client's hints, so every search is exact.
TEST(Rebalancer, ConcurrentWithClient) {
  harness::Rig rig(harness::test_key(), Domain(32), Store::decoupled(24, 4), 6,
                   InsertStyle::kDecoupled);
  Rebalancer reb(rig.shared, {.batch = 3, .interval = std::chrono::milliseconds(0),
                              .trigger_inserts = 8});
  std::vector<Plaintext> inserted;
  CoinSource vals(10);
  for (int i = 0; i < 400; ++i) {
    inserted.push_back(vals.uniform(32));
    rig.client.insert(inserted.back());
    if (i % 10 == 0) {
      const Plaintext a = vals.uniform(32);
      const Plaintext b = vals.uniform(32);
      const auto got = harness::as_set(rig.client.search_range({a, b}));
      ASSERT_EQ(got, oracle::filter(rig.decrypted(), a, b)) << i;
    }
    if (i % 25 == 0) rig.session.rebalance_hint(1);
  }
  rig.session.rebalance_hint(0);
  reb.stop();
  EXPECT_GT(reb.passes_completed(), 1u);
  EXPECT_TRUE(oracle::is_rotation_of_sorted(rig.decrypted(), inserted));
}

}  // namespace
}  // namespace eseds
