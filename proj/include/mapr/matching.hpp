#pragma once

#include "mapr/model.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace mapr {

/// BG(D): buyers without the dummy in their demand on the left, the real items
/// they demand on the right, an edge {i, a} for every a in D_i.
class BipartiteGraph
{
public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t buyers, std::size_t items);

  std::size_t buyer_count() const
  {
    return adjacency_.size();
  }

  std::size_t item_count() const
  {
    return items_;
  }

  BuyerSet const &left() const
  {
    return left_;
  }

  ItemSet const &right() const
  {
    return right_;
  }

  // Neighbours of a left vertex, ascending item index.
  ItemSet const &neighbours(BuyerIndex buyer) const
  {
    return adjacency_[buyer];
  }

  bool has_edge(BuyerIndex buyer, ItemIndex item) const
  {
    return left_.contains(buyer) && adjacency_[buyer].contains(item);
  }

  std::size_t edge_count() const;

  // Adds the edge and both endpoints. The dummy cannot be an endpoint.
  void add_edge(BuyerIndex buyer, ItemIndex item);

private:
  std::size_t          items_ = 0;
  BuyerSet             left_;
  ItemSet              right_;
  std::vector<ItemSet> adjacency_;
};

/// Set of vertex-disjoint buyer/item pairs, stored both ways for O(1) lookup.
class Matching
{
public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  Matching() = default;
  Matching(std::size_t buyers, std::size_t items);

  std::size_t buyer_count() const
  {
    return item_of_.size();
  }

  std::size_t item_count() const
  {
    return buyer_of_.size();
  }

  std::size_t size() const
  {
    return size_;
  }

  bool empty() const
  {
    return size_ == 0;
  }

  // kNone when unmatched.
  ItemIndex item_of(BuyerIndex buyer) const
  {
    return item_of_[buyer];
  }

  BuyerIndex buyer_of(ItemIndex item) const
  {
    return buyer_of_[item];
  }

  bool has_buyer(BuyerIndex buyer) const
  {
    return item_of_[buyer] != kNone;
  }

  bool has_item(ItemIndex item) const
  {
    return buyer_of_[item] != kNone;
  }

  bool contains(BuyerIndex buyer, ItemIndex item) const
  {
    return item_of_[buyer] == item;
  }

  // Throws InvalidMatching if either endpoint is already matched or the item
  // is the dummy.
  void add(BuyerIndex buyer, ItemIndex item);

  // Re-pairs along an augmenting path; endpoints may already be matched.
  void set(BuyerIndex buyer, ItemIndex item);

  void remove(BuyerIndex buyer);

  BuyerSet matched_buyers() const;
  ItemSet  matched_items() const;

  // Edges in ascending buyer order.
  std::vector<std::pair<BuyerIndex, ItemIndex>> edges() const;

  friend bool operator==(Matching const &, Matching const &) = default;

private:
  std::size_t             size_ = 0;
  std::vector<ItemIndex>  item_of_;
  std::vector<BuyerIndex> buyer_of_;
};

BipartiteGraph build_graph(DemandSituation const &demands);

/// One matching-augmentation phase: every vertex-disjoint shortest augmenting
/// path found in a layered search is applied. Free buyers are explored in
/// ascending index order, neighbours in ascending item order. Returns the
/// input unchanged iff no augmenting path exists. Matched vertices stay
/// matched.
Matching augment(BipartiteGraph const &graph, Matching const &matching);

/// Iterates augment() from the empty matching to its fixed point.
Matching max_matching(DemandSituation const &demands);
Matching max_matching(BipartiteGraph const &graph);

/// pi^M: matched buyers get their item, everyone else the dummy.
Allocation matching_to_allocation(Matching const &matching, std::size_t buyers);

/// True iff a maximum matching covers every buyer whose demand excludes o.
bool equilibrium_allocation_exists(DemandSituation const &demands);

}  // namespace mapr
