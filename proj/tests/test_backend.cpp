#include <gtest/gtest.h>

#include <thread>

#include "backend.hpp"
#include "cdcl.hpp"
#include "oracle.hpp"

using namespace galoissat;
using namespace std::chrono_literals;
namespace gt = galoissat::testing;

TEST(DecodeOutput, SatWithModel) {
  auto r = decode_competition_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 10, 3);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Sat) << r.note;
  EXPECT_EQ(r.outcome.model, Assignment(std::vector<std::uint8_t>{1, 0, 1}));
}

TEST(DecodeOutput, UnsatAndUnknown) {
  EXPECT_EQ(decode_competition_output("s UNSATISFIABLE\n", 20, 3).outcome.kind, OutcomeKind::Unsat);
  EXPECT_EQ(decode_competition_output("s UNKNOWN\n", 0, 3).outcome.kind, OutcomeKind::Unknown);
  EXPECT_EQ(decode_competition_output("", 20, 3).outcome.kind, OutcomeKind::Unsat);
  EXPECT_EQ(decode_competition_output("s UNSATISFIABLE\r\n", 0, 3).outcome.kind, OutcomeKind::Unsat);
}

TEST(DecodeOutput, MalformedIsUnknownWithNote) {
  for (auto [text, code] : std::vector<std::pair<std::string, int>>{
           {"s SATISFIABLE\n", 10},
           {"s SATISFIABLE\nv 1 2 3\n", 10},
           {"s SATISFIABLE\nv 1 9 0\n", 10},
           {"s SATISFIABLE\nv 1 x 0\n", 10},
           {"s UNSATISFIABLE\n", 10},
           {"s MAYBE\n", 0},
           {"", 0}}) {
    auto r = decode_competition_output(text, code, 3);
    EXPECT_EQ(r.outcome.kind, OutcomeKind::Unknown) << text;
    EXPECT_FALSE(r.note.empty()) << text;
  }
}

TEST(InternalBackend, SolvesAndHonoursDeadline) {
  InternalBackend b;
  Cnf unsat(1, {{pos(1)}, {neg(1)}});
  EXPECT_EQ(b.run(unsat, 0, Clock::now() + 5s, {}).outcome.kind, OutcomeKind::Unsat);
  auto rep = b.run(gt::pigeonhole(10), 0, Clock::now() + 50ms, {});
  EXPECT_EQ(rep.outcome.kind, OutcomeKind::Timeout);
  EXPECT_GT(rep.work, 0u);
}

TEST(ExternalBackend, SelfAdapterMatchesInternal) {
  ExternalBackend ext(GALOISSAT_CLI_PATH, {"solve"});
  InternalBackend in;
  Rng rng(50);
  for (int i = 0; i < 50; ++i) {
    Var n = 5 + static_cast<Var>(rng.below(40));
    Cnf cnf = gt::random_ksat(rng, n, 4.26);
    auto a = ext.run(cnf, 0, Clock::now() + 30s, {});
    auto b = in.run(cnf, 0, Clock::now() + 30s, {});
    ASSERT_EQ(a.outcome.kind, b.outcome.kind) << a.note;
    if (a.outcome.kind == OutcomeKind::Sat) EXPECT_TRUE(verify_model(cnf, a.outcome.model));
  }
}

TEST(ExternalBackend, KillsOnDeadlineAndStop) {
  Cnf cnf(1, {{pos(1)}});
  auto t0 = Clock::now();
  auto r = run_external("/bin/sh", {"-c", "sleep 30"}, cnf, Clock::now() + 200ms, {});
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Timeout);
  EXPECT_LT(Clock::now() - t0, 5s);

  std::stop_source src;
  std::jthread stopper([&] {
    std::this_thread::sleep_for(100ms);
    src.request_stop();
  });
  t0 = Clock::now();
  r = run_external("/bin/sh", {"-c", "sleep 30"}, cnf, Clock::now() + 30s, src.get_token());
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Unknown);
  EXPECT_LT(Clock::now() - t0, 5s);
}

TEST(ExternalBackend, MissingBinaryIsUnknownWithNote) {
  Cnf cnf(1, {{pos(1)}});
  auto r = run_external("/nonexistent/solver", {}, cnf, Clock::now() + 5s, {});
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Unknown);
  EXPECT_FALSE(r.note.empty());
}

TEST(StubBackend, ScriptedOutcomesAndCancellation) {
  StubBackend stub(StubBackend::Script{OutcomeKind::Unsat, 0ms, std::nullopt}, 2ms);
  stub.script(1, {OutcomeKind::Sat, 10ms, std::nullopt});
  Cnf cnf(2, {{pos(1), pos(2)}});
  EXPECT_EQ(stub.run(cnf, 0, Clock::now() + 1s, {}).outcome.kind, OutcomeKind::Unsat);
  auto sat = stub.run(cnf, 1, Clock::now() + 1s, {});
  ASSERT_EQ(sat.outcome.kind, OutcomeKind::Sat);
  EXPECT_TRUE(verify_model(cnf, sat.outcome.model));

  stub.script(2, {OutcomeKind::Sat, 10s, std::nullopt});
  EXPECT_EQ(stub.run(cnf, 2, Clock::now() + 30ms, {}).outcome.kind, OutcomeKind::Timeout);
  std::stop_source src;
  src.request_stop();
  EXPECT_EQ(stub.run(cnf, 2, Clock::now() + 1s, src.get_token()).outcome.kind, OutcomeKind::Unknown);
  EXPECT_EQ(stub.started(), 4u);
  EXPECT_EQ(stub.exits().size(), 4u);
}
