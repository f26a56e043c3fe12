#include <gtest/gtest.h>

#include <cmath>

#include "trajgrid/core/error.hpp"
#include "trajgrid/dataset/annotations.hpp"
#include "trajgrid/dataset/synthetic.hpp"

namespace trajgrid {
namespace {

int obstacle_hits(const SyntheticScene& s) {
  int hits = 0;
  for (const auto& t : s.trajectories) {
    for (const auto& p : t.points) {
      const int x = static_cast<int>(std::floor(p.position.x));
      const int y = static_cast<int>(std::floor(p.position.y));
      hits += s.labels.contains(x, y) && s.labels.at(x, y) == SemanticClass::obstacle;
    }
  }
  return hits;
}

TEST(Synthetic, StraightCorridorWithoutJitterIsCollinear) {
  AgentSpec agents;
  agents.jitter_sigma = 0.0;
  const auto spec = straight_corridor(640, 320, 40.0);
  const auto scene = generate_synthetic(spec, agents, 1, 5);
  ASSERT_EQ(scene.trajectories.size(), 1u);
  ASSERT_GE(scene.trajectories[0].points.size(), 2u);
  for (const auto& p : scene.trajectories[0].points) EXPECT_DOUBLE_EQ(p.position.y, 160.0);
}

TEST(Synthetic, SameSeedIsBitIdentical) {
  const auto spec = corridor_world(3);
  const auto a = generate_synthetic(spec, AgentSpec{}, 40, 17);
  const auto b = generate_synthetic(spec, AgentSpec{}, 40, 17);
  EXPECT_EQ(a.image.data, b.image.data);
  EXPECT_EQ(a.labels.classes, b.labels.classes);
  ASSERT_EQ(a.trajectories.size(), b.trajectories.size());
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    ASSERT_EQ(a.trajectories[i].points.size(), b.trajectories[i].points.size());
    for (std::size_t j = 0; j < a.trajectories[i].points.size(); ++j) {
      EXPECT_EQ(a.trajectories[i].points[j].frame, b.trajectories[i].points[j].frame);
      EXPECT_EQ(a.trajectories[i].points[j].position, b.trajectories[i].points[j].position);
    }
  }
  const auto c = generate_synthetic(spec, AgentSpec{}, 40, 18);
  EXPECT_NE(a.trajectories[0].points[0].position, c.trajectories[0].points[0].position);
}

TEST(Synthetic, TIntersectionBranchesAreFair) {
  AgentSpec agents;
  agents.min_steps = agents.max_steps = 120;  // long enough to reach a branch end
  const int n = 3000;
  const int size = 640;
  const auto scene = generate_synthetic(t_intersection(size), agents, n, 2024);
  int left = 0, right = 0;
  for (const auto& t : scene.trajectories) {
    const double x = t.points.back().position.x;
    if (x < size / 2.0 - 60) ++left;
    if (x > size / 2.0 + 60) ++right;
  }
  ASSERT_EQ(left + right, n);
  const double p = static_cast<double>(left) / n;
  const double sigma = std::sqrt(0.25 / n);
  EXPECT_LT(std::abs(p - 0.5), 3 * sigma) << "left fraction " << p;
}

TEST(Synthetic, NoPointOnObstacles) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto scene = generate_synthetic(corridor_world(seed), AgentSpec{}, 200, seed + 100);
    EXPECT_EQ(obstacle_hits(scene), 0) << seed;
  }
}

TEST(Synthetic, EveryPixelHasOneClass) {
  const auto labels = render_labels(corridor_world(9));
  EXPECT_EQ(labels.classes.size(), static_cast<std::size_t>(640 * 640));
  int counts[3] = {0, 0, 0};
  for (auto c : labels.classes) {
    ASSERT_LE(static_cast<int>(c), 2);
    ++counts[static_cast<int>(c)];
  }
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[1], 0);
  EXPECT_GT(counts[2], 0);
}

TEST(Synthetic, EmptyPathsIsSpecError) {
  SceneSpec spec;
  try {
    generate_synthetic(spec, AgentSpec{}, 5, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::spec);
  }
}

TEST(Synthetic, TrajectoriesAreValidAndStrided) {
  const auto scene = generate_synthetic(corridor_world(1), AgentSpec{}, 50, 1);
  for (const auto& t : scene.trajectories) {
    EXPECT_NO_THROW(t.validate());
    for (std::size_t i = 1; i < t.points.size(); ++i) EXPECT_EQ(t.points[i].frame - t.points[i - 1].frame, 12);
  }
}

TEST(Synthetic, AnnotationsRebuildTheSameTracks) {
  const auto scene = generate_synthetic(corridor_world(2), AgentSpec{}, 30, 4);
  const auto tracks = build_tracks(to_annotations(scene.trajectories));
  ASSERT_EQ(tracks.size(), scene.trajectories.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    ASSERT_EQ(tracks[i].points.size(), scene.trajectories[i].points.size());
    for (std::size_t j = 0; j < tracks[i].points.size(); ++j) {
      EXPECT_NEAR(tracks[i].points[j].position.x, scene.trajectories[i].points[j].position.x, 1e-9);
      EXPECT_NEAR(tracks[i].points[j].position.y, scene.trajectories[i].points[j].position.y, 1e-9);
    }
  }
}

}  // namespace
}  // namespace trajgrid
