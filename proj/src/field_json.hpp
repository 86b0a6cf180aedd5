#pragma once

#include "json.hpp"
#include "qwalk/coin.hpp"

namespace qwalk::detail {

CoinField field_from_json_object(const nlohmann::json& j);
nlohmann::json field_to_json_object(const CoinField& field);

}  // namespace qwalk::detail
