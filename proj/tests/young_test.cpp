#include "cqv/young.hpp"

#include "cqv/fock.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cqv;

TEST(Young, BoxResidue) {
  ModelConfig cfg{3, 1, {1}};
  EXPECT_EQ(box_residue(cfg, Box{0, 2, 0}), 0);  // 1 + 2 - 0 = 3 = 0 mod 3
  ModelConfig cfg0{3, 1, {0}};
  EXPECT_EQ(box_residue(cfg0, Box{0, 0, 0}), 0);
  EXPECT_EQ(box_residue(cfg0, Box{0, 0, 1}), 2);  // -1 = 2 mod 3
}

TEST(Young, AddableRemovableEmpty) {
  ModelConfig cfg{3, 1, {1}};
  Multipartition empty{{{}}};
  auto add = addable_boxes(cfg, empty, 1);
  ASSERT_EQ(add.size(), 1u);
  EXPECT_EQ(add[0], (Box{0, 0, 0}));
  EXPECT_TRUE(removable_boxes(cfg, empty, 1).empty());
  EXPECT_TRUE(addable_boxes(cfg, empty, 0).empty());
}

TEST(Young, AddableRemovableStaircase) {
  // lambda = (2,1): removable at (1,0) and (0,1); addable at (2,0),(1,1),(0,2)
  Partition p{2, 1};
  auto rem = removable_cells(p, 0);
  auto add = addable_cells(p, 0);
  std::set<std::pair<int, int>> rs, as;
  for (auto b : rem) rs.insert({b.i, b.j});
  for (auto b : add) as.insert({b.i, b.j});
  EXPECT_EQ(rs, (std::set<std::pair<int, int>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(as, (std::set<std::pair<int, int>>{{2, 0}, {1, 1}, {0, 2}}));
}

TEST(Young, NetAddableIsW) {
  ModelConfig cfg{4, 2, {0, 2}};
  for (const auto& mp : enumerate_multipartitions(cfg.w, 5)) {
    int net = 0;
    for (int k = 0; k < cfg.n; ++k)
      net += static_cast<int>(addable_boxes(cfg, mp, k).size()) -
             static_cast<int>(removable_boxes(cfg, mp, k).size());
    EXPECT_EQ(net, cfg.w);
  }
}

TEST(Young, EnumerationCounts) {
  auto e1 = enumerate_multipartitions(1, 1);
  ASSERT_EQ(e1.size(), 2u);
  EXPECT_EQ(e1[0].str(), "[[]]");
  EXPECT_EQ(e1[1].str(), "[[1]]");
  EXPECT_EQ(enumerate_multipartitions(1, 2).size(), 4u);
  EXPECT_EQ(enumerate_multipartitions(2, 1).size(), 3u);
  // partial sums of the two-fold partition generating function
  EXPECT_EQ(enumerate_multipartitions(1, 5).size(), 19u);
  EXPECT_EQ(enumerate_multipartitions(1, 6).size(), 30u);
  EXPECT_EQ(enumerate_multipartitions(2, 6).size(), 139u);
}

TEST(Young, EnumerationOrderIsGradedAndStable) {
  auto e = enumerate_multipartitions(2, 4);
  for (std::size_t i = 1; i < e.size(); ++i) {
    EXPECT_LE(e[i - 1].total(), e[i].total());
    EXPECT_TRUE(e[i - 1] < e[i]);
  }
}

TEST(Young, NeighborsEmpty) {
  ModelConfig cfg{3, 2, {1, 1}};
  Multipartition empty{{{}, {}}};
  EXPECT_EQ(neighbors_up(cfg, empty, 1).size(), 2u);  // one per component colored 1
  EXPECT_TRUE(neighbors_up(cfg, empty, 0).empty());
  EXPECT_TRUE(neighbors_down(cfg, empty, 1).empty());
}

TEST(Young, UpDownDuality) {
  ModelConfig cfg{3, 2, {0, 1}};
  auto all = enumerate_multipartitions(cfg.w, 5);
  for (const auto& lam : all) {
    for (int k = 0; k < cfg.n; ++k) {
      for (const auto& mu : neighbors_up(cfg, lam, k)) {
        auto down = neighbors_down(cfg, mu, k);
        EXPECT_NE(std::find(down.begin(), down.end(), lam), down.end());
        EXPECT_EQ(mu.total(), lam.total() + 1);
      }
    }
  }
}

TEST(Young, UpDownCountMatchesHDim) {
  ModelConfig cfg{3, 2, {0, 1}};
  for (const auto& lam : enumerate_multipartitions(cfg.w, 5)) {
    for (int k = 0; k < cfg.n; ++k) {
      long diff = static_cast<long>(neighbors_up(cfg, lam, k).size()) -
                  static_cast<long>(neighbors_down(cfg, lam, k).size());
      EXPECT_EQ(diff, h_dim(cfg, lam, k));
    }
  }
}

TEST(Young, AddRemoveRoundTrip) {
  ModelConfig cfg{4, 1, {2}};
  for (const auto& lam : enumerate_multipartitions(1, 5)) {
    for (int k = 0; k < cfg.n; ++k) {
      for (const Box& b : addable_boxes(cfg, lam, k)) {
        auto bigger = add_box(lam, b);
        EXPECT_EQ(remove_box(bigger, b), lam);
      }
    }
  }
  EXPECT_THROW(remove_box(Multipartition{{{2, 2}}}, Box{0, 1, 0}), std::invalid_argument);
}

TEST(Young, ResidueCounts) {
  ModelConfig cfg{3, 1, {0}};
  Multipartition mp{{{2, 1}}};  // boxes (0,0)->0, (1,0)->1, (0,1)->2
  EXPECT_EQ(residue_counts(cfg, mp), (std::vector<int>{1, 1, 1}));
}
