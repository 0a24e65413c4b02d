#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wfeval/case_study.hpp"
#include "wfeval/resources.hpp"

using namespace wfeval;

namespace {

WorkflowGraph fixture(const char* name) { return load_workflow(default_fixture_dir() / "case_study" / name); }

TaskAttributes timed(double d, std::vector<double> r_r = {}) {
  TaskAttributes t;
  t.d = d;
  t.r_r = std::move(r_r);
  return t;
}

}  // namespace

TEST(Cumulative, CaseStudyCost) {
  EXPECT_NEAR(cumulative_resources(fixture("w1.json"))[0], 2.52e-3, 1e-12);
  EXPECT_NEAR(cumulative_resources(fixture("w3.json"))[0], 9.6e-4, 1e-12);
}

TEST(CriticalPath, CaseStudyDuration) {
  EXPECT_EQ(critical_path_duration(fixture("w1.json")), 6110.0);
  EXPECT_EQ(critical_path_duration(fixture("w2.json")), 3810.0);
  EXPECT_EQ(critical_path_duration(fixture("w3.json")), 3810.0);
}

TEST(Schedule, Chain) {
  WorkflowGraph w("chain", {}, {});
  w.add_input("in").add_task("t1", timed(2300)).add_task("t2", timed(1500)).add_output("out");
  w.add_edge("in", "t1").add_edge("t1", "t2").add_edge("t2", "out");
  auto s = asap_schedule(w);
  EXPECT_EQ(s.at("t1").start, 0.0);
  EXPECT_EQ(s.at("t1").finish, 2300.0);
  EXPECT_EQ(s.at("t2").start, 2300.0);
  EXPECT_EQ(s.at("t2").finish, 3800.0);
}

TEST(Schedule, JoinWaitsForSlowestParent) {
  WorkflowGraph w("join", {}, {});
  w.add_input("in").add_task("a", timed(5)).add_task("b", timed(7)).add_task("j", timed(1)).add_output("out");
  w.add_edge("in", "a").add_edge("in", "b").add_edge("a", "j").add_edge("b", "j").add_edge("j", "out");
  EXPECT_EQ(asap_schedule(w).at("j").start, 7.0);
  EXPECT_EQ(critical_path_duration(w), 8.0);
}

TEST(Schedule, ZeroDuration) {
  WorkflowGraph w("zero", {}, {"slots"});
  w.add_input("in").add_task("t", timed(0, {4})).add_output("out").add_edge("in", "t").add_edge("t", "out");
  auto s = asap_schedule(w);
  EXPECT_EQ(s.at("t").start, 0.0);
  EXPECT_EQ(s.at("t").finish, 0.0);
  EXPECT_EQ(peak_releasable(w), std::vector<double>{0.0});
}

TEST(Peak, OverlappingTasksSum) {
  WorkflowGraph w("par", {}, {"slots"});
  w.add_input("in").add_task("a", timed(4, {2})).add_task("b", timed(4, {3})).add_output("out");
  w.add_edge("in", "a").add_edge("in", "b").add_edge("a", "out").add_edge("b", "out");
  EXPECT_EQ(peak_releasable(w), std::vector<double>{5.0});
}

TEST(Peak, SequentialTasksDoNotDoubleCountAtBoundary) {
  WorkflowGraph w("seq", {}, {"slots"});
  w.add_input("in").add_task("a", timed(4, {2})).add_task("b", timed(4, {3})).add_output("out");
  w.add_edge("in", "a").add_edge("a", "b").add_edge("b", "out");
  EXPECT_EQ(peak_releasable(w), std::vector<double>{3.0});
}

TEST(Oracles, CriticalPathMatchesPathEnumeration) {
  wftest::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    auto w = wftest::random_dag(rng);
    EXPECT_EQ(critical_path_duration(w), wftest::longest_path_by_enumeration(w)) << i;
  }
}

TEST(Oracles, ScheduleMatchesRecursion) {
  wftest::Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    auto w = wftest::random_dag(rng);
    auto s = asap_schedule(w);
    auto ref = wftest::asap_starts_by_recursion(w);
    double max_finish = 0.0;
    for (const auto& [id, win] : s) {
      EXPECT_EQ(win.start, ref.at(id));
      EXPECT_EQ(win.finish, win.start + w.find(id)->task().d);
      max_finish = std::max(max_finish, win.finish);
    }
    EXPECT_EQ(max_finish, critical_path_duration(w));
  }
}

TEST(Oracles, PeakMatchesTimeGrid) {
  wftest::Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    auto w = wftest::random_dag(rng);
    EXPECT_EQ(peak_releasable(w), wftest::peak_by_time_grid(w)) << i;
  }
}

TEST(Peak, BoundedBySingleTaskAndTotal) {
  wftest::Rng rng(34);
  for (int i = 0; i < 300; ++i) {
    auto w = wftest::random_dag(rng);
    auto peak = peak_releasable(w);
    std::vector<double> lo(peak.size(), 0.0), hi(peak.size(), 0.0);
    for (const auto& n : w.nodes()) {
      if (!n.is_task() || n.task().d == 0.0) continue;
      for (std::size_t k = 0; k < peak.size(); ++k) {
        lo[k] = std::max(lo[k], n.task().r_r[k]);
        hi[k] += n.task().r_r[k];
      }
    }
    for (std::size_t k = 0; k < peak.size(); ++k) {
      EXPECT_GE(peak[k], lo[k]);
      EXPECT_LE(peak[k], hi[k]);
    }
  }
}

TEST(Resources, DeletingATaskNeverIncreasesAnyMeasure) {
  wftest::Rng rng(35);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto w = wftest::random_dag(rng);
    const auto before = resource_summary(w);
    for (const auto& victim : w.nodes()) {
      if (!victim.is_task()) continue;
      WorkflowGraph smaller(w.id(), w.cumulative_dims(), w.releasable_dims());
      for (const auto& n : w.nodes())
        if (n.id != victim.id) smaller.add_node(n);
      for (const auto& e : w.edges())
        if (e.from != victim.id && e.to != victim.id) smaller.add_edge(e.from, e.to);
      if (!validate(smaller).ok) continue;
      ++checked;
      const auto after = resource_summary(smaller);
      EXPECT_LE(after.duration, before.duration);
      for (std::size_t k = 0; k < after.cumulative.size(); ++k) EXPECT_LE(after.cumulative[k], before.cumulative[k]);
      // Removing a task with task children can pull them earlier, so the peak
      // is only monotone when no other start time moves.
      bool feeds_task = false;
      for (const auto& e : w.edges())
        if (e.from == victim.id && w.find(e.to)->is_task()) feeds_task = true;
      if (feeds_task) continue;
      for (std::size_t k = 0; k < after.releasable_peak.size(); ++k)
        EXPECT_LE(after.releasable_peak[k], before.releasable_peak[k]);
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Resources, DeletingATaskCanRaiseThePeak) {
  WorkflowGraph w("shift", {}, {"slots"});
  w.add_input("in").add_task("x", timed(5, {0})).add_task("b", timed(1, {1})).add_task("c", timed(3, {1}));
  w.add_output("out");
  w.add_edge("in", "x").add_edge("in", "b").add_edge("x", "b").add_edge("in", "c");
  w.add_edge("b", "out").add_edge("c", "out");
  EXPECT_EQ(peak_releasable(w), std::vector<double>{1.0});

  WorkflowGraph without_x("shift", {}, {"slots"});
  without_x.add_input("in").add_task("b", timed(1, {1})).add_task("c", timed(3, {1})).add_output("out");
  without_x.add_edge("in", "b").add_edge("in", "c").add_edge("b", "out").add_edge("c", "out");
  EXPECT_EQ(peak_releasable(without_x), std::vector<double>{2.0});
}
