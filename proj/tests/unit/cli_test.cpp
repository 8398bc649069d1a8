#include <gtest/gtest.h>

#include <sys/wait.h>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"

namespace adapt {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommandResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

class CliTest : public ::testing::Test {
 protected:
  std::string sample(const std::string& name) const { return (testing::samples_dir() / name).string(); }
  std::string tmp(const std::string& name) const { return (dir_.path() / name).string(); }

  CommandResult run(const std::string& args) {
    std::string out = tmp("stdout.txt"), err = tmp("stderr.txt");
    std::string cmd = std::string(quote(ADAPTKIT_BIN)) + " " + args + " >" + quote(out) + " 2>" + quote(err);
    int status = std::system(cmd.c_str());
    CommandResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = testing::read_file(out);
    r.err = testing::read_file(err);
    return r;
  }

  std::string globals() const {
    return "--schema " + quote(sample("schema.json")) + " --rules " + quote(sample("rules.json")) +
           " --profile " + quote(sample("profile.json"));
  }

  testing::TempDir dir_;
};

TEST_F(CliTest, CheckAcceptsAndRejects) {
  EXPECT_EQ(run("check " + quote(sample("connection.asl"))).code, 0);
  auto plain = run("check --plain " + quote(sample("connection.asl")));
  EXPECT_EQ(plain.code, 2);
  std::ofstream(tmp("bad.asl")) << "class A { fn f() { call A.f(); } }\n";
  auto bad = run("check " + quote(tmp("bad.asl")));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("E006"), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("bad.asl:1:"), std::string::npos) << bad.err;
}

TEST_F(CliTest, MissingFileAndUsageErrors) {
  EXPECT_EQ(run("check " + quote(tmp("absent.asl"))).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, EnumerateAndAnalyze) {
  auto e = run("--json enumerate " + quote(sample("connection.asl")));
  ASSERT_EQ(e.code, 0) << e.err;
  auto keys = json::parse(e.out);
  ASSERT_TRUE(keys.is_array());
  EXPECT_EQ(keys.size(), 4u);

  auto a = run("--json analyze " + quote(sample("connection.asl")) +
               " --binding 'Connection.connect=Wifi,Connection.send=Wifi' --supply " + quote(sample("supply_bluetooth.json")));
  EXPECT_EQ(a.code, 3) << a.out << a.err;
  EXPECT_NE(a.out.find("WiFiAdapter"), std::string::npos);

  auto cap = run("enumerate --max-bindings 2 " + quote(sample("connection.asl")));
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("--max-bindings"), std::string::npos);
}

TEST_F(CliTest, TailorWritesPlainProgram) {
  auto t = run("tailor " + quote(sample("connection.asl")) + " --binding 'Connection.connect=Wifi,Connection.send=Wifi' -o " +
               quote(tmp("wifi.asl")));
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(run("check --plain " + quote(tmp("wifi.asl"))).code, 0);
  EXPECT_EQ(run("tailor " + quote(sample("connection.asl")) + " --binding 'Connection.send=Wifi'").code, 2);
}

TEST_F(CliTest, DescriptorIsDeterministic) {
  auto a = run(globals() + " descriptor " + quote(sample("connection.asl")) + " -o " + quote(tmp("a.json")) +
               " --artifacts " + quote(tmp("arts")));
  ASSERT_EQ(a.code, 0) << a.err;
  auto b = run(globals() + " descriptor " + quote(sample("connection.asl")) + " -o " + quote(tmp("b.json")));
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(testing::read_file(tmp("a.json")), testing::read_file(tmp("b.json")));
  auto bundle = json::parse(testing::read_file(tmp("a.json")));
  EXPECT_EQ(bundle["descriptor"]["alternatives"].size(), bundle["artifacts"].size());
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(tmp("arts"))) files += entry.is_regular_file();
  EXPECT_EQ(files, bundle["artifacts"].size());
  EXPECT_EQ(run("descriptor " + quote(sample("connection.asl"))).code, 2);  // no rules given
}

TEST_F(CliTest, UnreachableRegistryIsNetworkError) {
  auto r = run("--registry http://127.0.0.1:1 " + globals() + " discover Connection --supply " +
               quote(sample("supply_wifi.json")) + " --retries 0");
  EXPECT_EQ(r.code, 5) << r.err;
}

TEST_F(CliTest, DeployChecksFit) {
  ASSERT_EQ(run("tailor " + quote(sample("connection.asl")) +
                " --binding 'Connection.connect=Bluetooth,Connection.send=Bluetooth' -o " + quote(tmp("bt.asl")))
                .code,
            0);
  json sla = {{"sla_id", "sla-x"},   {"session_id", "x"},   {"service_id", "svc-0001"},
              {"alternative_key", "Connection.connect=Bluetooth,Connection.send=Bluetooth"},
              {"terms", json::object()}, {"supply", {{"quantities", json::object()}, {"capabilities", json::array()}}},
              {"agreed_at", "t"}};
  std::ofstream(tmp("sla.json")) << sla.dump();
  auto refused = run("deploy " + quote(tmp("bt.asl")) + " --sla " + quote(tmp("sla.json")) + " --supply " +
                     quote(sample("supply_wifi.json")) + " --out " + quote(tmp("apps")));
  EXPECT_EQ(refused.code, 3) << refused.err;
  EXPECT_NE(refused.err.find("BluetoothAdapter"), std::string::npos);
  auto wrong_digest = run("deploy " + quote(tmp("bt.asl")) + " --sla " + quote(tmp("sla.json")) + " --supply " +
                          quote(sample("supply_bluetooth.json")) + " --out " + quote(tmp("apps")) +
                          " --digest 0000");
  EXPECT_EQ(wrong_digest.code, 4);
  auto ok = run("deploy " + quote(tmp("bt.asl")) + " --sla " + quote(tmp("sla.json")) + " --supply " +
                quote(sample("supply_bluetooth.json")) + " --out " + quote(tmp("apps")));
  EXPECT_EQ(ok.code, 0) << ok.err;
}

// Starts `adaptkit serve` on a free port and stops it with SIGTERM.
class ServedCliTest : public CliTest {
 protected:
  void SetUp() override {
    std::string cmd = std::string(quote(ADAPTKIT_BIN)) + " serve --listen 127.0.0.1:0 --seed 1 --store " +
                      quote(tmp("store")) + " >" + quote(tmp("serve.log")) + " 2>&1 & echo $! >" + quote(tmp("pid"));
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::regex listening("listening on (http://[0-9.]+:[0-9]+)");
    for (int i = 0; i < 200 && url_.empty(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
      std::smatch m;
      std::string log = testing::read_file(tmp("serve.log"));
      if (std::regex_search(log, m, listening)) url_ = m[1];
    }
    pid_ = std::stoi(testing::read_file(tmp("pid")));
    ASSERT_FALSE(url_.empty()) << testing::read_file(tmp("serve.log"));
  }
  void TearDown() override {
    if (pid_ > 0) ::kill(pid_, SIGTERM);
  }

  std::string remote() const { return "--registry " + url_ + " " + globals(); }

  std::string url_;
  int pid_ = 0;
};

TEST_F(ServedCliTest, PublishDiscoverDeploy) {
  ASSERT_EQ(run(globals() + " descriptor " + quote(sample("connection.asl")) + " -o " + quote(tmp("bundle.json"))).code, 0);
  auto pub = run(remote() + " publish " + quote(tmp("bundle.json")));
  ASSERT_EQ(pub.code, 0) << pub.err;
  EXPECT_EQ(pub.out, "svc-0001\n");

  auto disc = run(remote() + " --json discover Connection --supply " + quote(sample("supply_wifi.json")) +
                  " --request " + quote(sample("request_cost_low.json")) + " --transcript " + quote(tmp("t.jsonl")) +
                  " --deploy " + quote(tmp("apps")) + " --sla-out " + quote(tmp("sla.json")));
  ASSERT_EQ(disc.code, 0) << disc.err;
  auto result = json::parse(disc.out);
  EXPECT_EQ(result["status"], "agreed");
  EXPECT_EQ(result["sla"]["terms"], json({{"Cost", "High"}, {"Speed", "High"}}));
  EXPECT_TRUE(fs::exists(result["deployed"].get<std::string>()));
  EXPECT_FALSE(testing::read_file(tmp("t.jsonl")).empty());
  EXPECT_TRUE(fs::exists(tmp("sla.json")));

  auto nofit = run(remote() + " discover Connection --supply " + quote(sample("supply_none.json")));
  EXPECT_EQ(nofit.code, 3);
  auto relax = run(remote() + " --json discover Connection --supply " + quote(sample("supply_wifi.json")) +
                   " --request-json '{\"Cost\":\"Low\"}' --policy relax --priority Speed,Cost");
  ASSERT_EQ(relax.code, 0) << relax.err;
  EXPECT_EQ(json::parse(relax.out)["rounds"], 3);
  auto strict = run(remote() + " discover Connection --supply " + quote(sample("supply_wifi.json")) +
                    " --request-json '{\"Cost\":\"Low\"}' --policy abort-on-mismatch");
  EXPECT_EQ(strict.code, 3);

  EXPECT_TRUE(fs::exists(tmp("store") + "/services/svc-0001.json"));
  EXPECT_FALSE(fs::is_empty(tmp("store") + "/slas"));
}

}  // namespace
}  // namespace adapt
