#include "mapr/matching.hpp"

#include <deque>

namespace mapr {

BipartiteGraph::BipartiteGraph(std::size_t buyers, std::size_t items)
  : items_(items)
  , adjacency_(buyers)
{}

std::size_t BipartiteGraph::edge_count() const
{
  std::size_t n = 0;
  for (auto i : left_)
  {
    n += adjacency_[i].size();
  }
  return n;
}

void BipartiteGraph::add_edge(BuyerIndex buyer, ItemIndex item)
{
  if (item == kDummyItem)
  {
    throw Error(ErrorCode::InvalidInput, "the dummy item cannot be a graph vertex");
  }
  left_.insert(buyer);
  right_.insert(item);
  adjacency_[buyer].insert(item);
}

Matching::Matching(std::size_t buyers, std::size_t items)
  : item_of_(buyers, kNone)
  , buyer_of_(items, kNone)
{}

void Matching::add(BuyerIndex buyer, ItemIndex item)
{
  if (item == kDummyItem)
  {
    throw Error(ErrorCode::InvalidMatching, "the dummy item cannot be matched");
  }
  if (has_buyer(buyer) || has_item(item))
  {
    throw Error(ErrorCode::InvalidMatching, "matching edges must be vertex-disjoint");
  }
  item_of_[buyer] = item;
  buyer_of_[item] = buyer;
  ++size_;
}

void Matching::set(BuyerIndex buyer, ItemIndex item)
{
  ItemIndex const  old_item  = item_of_[buyer];
  BuyerIndex const old_buyer = buyer_of_[item];
  if (old_item != kNone && buyer_of_[old_item] == buyer)
  {
    buyer_of_[old_item] = kNone;
    --size_;
  }
  if (old_buyer != kNone && item_of_[old_buyer] == item)
  {
    item_of_[old_buyer] = kNone;
    --size_;
  }
  item_of_[buyer] = item;
  buyer_of_[item] = buyer;
  ++size_;
}

void Matching::remove(BuyerIndex buyer)
{
  ItemIndex const item = item_of_[buyer];
  if (item == kNone)
  {
    return;
  }
  item_of_[buyer] = kNone;
  buyer_of_[item] = kNone;
  --size_;
}

BuyerSet Matching::matched_buyers() const
{
  BuyerSet out;
  for (std::size_t i = 0; i < item_of_.size(); ++i)
  {
    if (item_of_[i] != kNone)
    {
      out.insert(i);
    }
  }
  return out;
}

ItemSet Matching::matched_items() const
{
  ItemSet out;
  for (std::size_t a = 0; a < buyer_of_.size(); ++a)
  {
    if (buyer_of_[a] != kNone)
    {
      out.insert(a);
    }
  }
  return out;
}

std::vector<std::pair<BuyerIndex, ItemIndex>> Matching::edges() const
{
  std::vector<std::pair<BuyerIndex, ItemIndex>> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < item_of_.size(); ++i)
  {
    if (item_of_[i] != kNone)
    {
      out.emplace_back(i, item_of_[i]);
    }
  }
  return out;
}

BipartiteGraph build_graph(DemandSituation const &demands)
{
  BipartiteGraph graph(demands.buyer_count(), demands.item_count());
  for (auto i : demands.demanders())
  {
    for (auto a : demands.demand(i))
    {
      graph.add_edge(i, a);
    }
  }
  return graph;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

class Phase
{
public:
  Phase(BipartiteGraph const &graph, Matching &matching)
    : graph_(graph)
    , matching_(matching)
    , layer_(graph.buyer_count(), kUnreached)
  {}

  // Layered search from all free left vertices. Returns false when no
  // augmenting path exists.
  bool build_layers()
  {
    std::deque<BuyerIndex> queue;
    for (auto u : graph_.left())
    {
      if (!matching_.has_buyer(u))
      {
        layer_[u] = 0;
        queue.push_back(u);
      }
    }
    while (!queue.empty())
    {
      BuyerIndex u = queue.front();
      queue.pop_front();
      if (layer_[u] >= free_layer_)
      {
        continue;
      }
      for (auto a : graph_.neighbours(u))
      {
        BuyerIndex w = matching_.buyer_of(a);
        if (w == Matching::kNone)
        {
          if (free_layer_ == kUnreached)
          {
            free_layer_ = layer_[u] + 1;
          }
        }
        else if (layer_[w] == kUnreached)
        {
          layer_[w] = layer_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return free_layer_ != kUnreached;
  }

  std::size_t run()
  {
    std::size_t found = 0;
    for (auto u : graph_.left())
    {
      if (!matching_.has_buyer(u) && layer_[u] == 0 && search(u))
      {
        ++found;
      }
    }
    return found;
  }

private:
  bool search(BuyerIndex u)
  {
    for (auto a : graph_.neighbours(u))
    {
      BuyerIndex w  = matching_.buyer_of(a);
      bool       ok = w == Matching::kNone ? layer_[u] + 1 == free_layer_
                                           : layer_[w] == layer_[u] + 1 && search(w);
      if (ok)
      {
        matching_.set(u, a);
        return true;
      }
    }
    layer_[u] = kUnreached;
    return false;
  }

  BipartiteGraph const    &graph_;
  Matching                &matching_;
  std::vector<std::size_t> layer_;
  std::size_t              free_layer_ = kUnreached;
};

void check_matching(BipartiteGraph const &graph, Matching const &matching)
{
  if (matching.buyer_count() != graph.buyer_count() ||
      matching.item_count() != graph.item_count())
  {
    throw Error(ErrorCode::InvalidMatching, "matching dimensions do not fit the graph");
  }
  for (auto const &[i, a] : matching.edges())
  {
    if (!graph.has_edge(i, a))
    {
      throw Error(ErrorCode::InvalidMatching, "matching contains an edge not in the graph");
    }
  }
}

}  // namespace

Matching augment(BipartiteGraph const &graph, Matching const &matching)
{
  check_matching(graph, matching);
  Matching next = matching;
  Phase    phase(graph, next);
  if (phase.build_layers())
  {
    phase.run();
  }
  return next;
}

namespace {

Matching augment_to_fixed_point(BipartiteGraph const &graph, Matching matching)
{
  while (true)
  {
    Matching next = augment(graph, matching);
    if (next.size() == matching.size())
    {
      return matching;
    }
    matching = std::move(next);
  }
}

}  // namespace

Matching max_matching(BipartiteGraph const &graph)
{
  return augment_to_fixed_point(graph, Matching(graph.buyer_count(), graph.item_count()));
}

Matching max_matching(DemandSituation const &demands)
{
  return max_matching(build_graph(demands));
}

Allocation matching_to_allocation(Matching const &matching, std::size_t buyers)
{
  std::vector<ItemIndex> assignment(buyers, kDummyItem);
  for (auto const &[i, a] : matching.edges())
  {
    assignment.at(i) = a;
  }
  return Allocation(std::move(assignment));
}

bool equilibrium_allocation_exists(DemandSituation const &demands)
{
  return max_matching(demands).size() == demands.demanders().size();
}

}  // namespace mapr
