#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bsll/count.hpp"
#include "bsll/cover_tree.hpp"
#include "bsll/covering.hpp"
#include "bsll/gog.hpp"
#include "bsll/pcgroup.hpp"
#include "bsll/rational.hpp"

namespace bsll {

using json = nlohmann::json;

json table_to_json(const GroupTable& t); // {order, mul: row-major ids}
GroupPtr table_from_json(const json& j); // verifies the axioms

json matrix_to_json(const MatrixA& a); // {p, k, rows}
MatrixA matrix_from_json(const json& j);

json rational_to_json(const Rational& r); // {num, den}

json covering_to_json(const LoopCovering& c);
LoopCovering covering_from_json(const json& j);

// Pool-backed variant for reports holding many coverings over few distinct
// groups: "group" becomes an index into a shared "group_tables" array,
// deduplicated by table content in first-appearance order.
class TablePool {
public:
  int intern(const GroupPtr& g);
  GroupPtr resolve(int ref) const;
  json to_json() const;
  static TablePool from_json(const json& j);

private:
  std::vector<GroupPtr> tables_;
};

json covering_to_json(const LoopCovering& c, TablePool& pool);
LoopCovering covering_from_json(const json& j, const TablePool& pool);

json gog_to_json(const GraphOfGroups& g);
GraphOfGroups gog_from_json(const json& j);

json family_witness_to_json(const EdgeSubgroupFamily& f);

json ball_to_json(const TreeBall& b);
std::string ball_to_text(const TreeBall& b);

// Full report documents; "timings" is the only key allowed to differ
// between identical runs.
json report_to_json(const CountReport& r);
json family_report_to_json(const FamilyReport& r);

// Report cache: one document per key, written atomically.
std::optional<json> cache_load(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const std::string& key, const json& doc);

std::string fnv1a_hex(const std::string& s);

} // namespace bsll
