#pragma once

#include "mapr/io.hpp"
#include "mapr/model.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

// Five buyers, items a..d; the running example used across the suites.
inline mapr::Economy example()
{
  return mapr::parse_economy(R"({
    "items": ["a", "b", "c", "d"],
    "buyers": 5,
    "valuations": [[4, 3, 5, 7], [7, 6, 8, 3], [5, 5, 8, 7], [9, 4, 3, 2], [6, 2, 4, 10]],
    "lower_bounds": [5, 4, 1, 5],
    "upper_bounds": [6, 6, 4, 7]
  })");
}

// Item set from comma separated names ("" is the empty set).
inline mapr::ItemSet items(mapr::Economy const &e, std::string const &names)
{
  mapr::ItemSet     out;
  std::stringstream ss(names);
  for (std::string name; std::getline(ss, name, ',');)
  {
    if (!name.empty())
    {
      out.insert(mapr::parse_item(e, name));
    }
  }
  return out;
}

inline mapr::PriceVector prices(std::vector<mapr::Money> v)
{
  return mapr::PriceVector(std::move(v));
}

// Economy from a compact description; the dummy is added automatically.
inline mapr::Economy make(std::vector<std::vector<mapr::Money>> values,
                          std::vector<mapr::Money> lower, std::vector<mapr::Money> upper)
{
  mapr::RawEconomy raw;
  raw.buyers = values.size();
  for (std::size_t a = 0; a < lower.size(); ++a)
  {
    raw.items.push_back(std::string(1, static_cast<char>('a' + a)));
  }
  for (auto &row : values)
  {
    row.insert(row.begin(), 0);
  }
  raw.valuations = std::move(values);
  lower.insert(lower.begin(), 0);
  upper.insert(upper.begin(), 0);
  raw.lower_bounds = std::move(lower);
  raw.upper_bounds = std::move(upper);
  auto v = mapr::validate_economy(std::move(raw));
  if (!v.ok())
  {
    throw mapr::Error(mapr::ErrorCode::InvalidInput, v.errors.front().message);
  }
  return std::move(*v.economy);
}

}  // namespace fixtures
