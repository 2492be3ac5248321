#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace wordle {

// String-keyed memo table shared by concurrent readers. Values must be pure
// functions of their keys, so a racing duplicate insert stores the same value.
template <class Value, std::size_t Shards = 64>
class MemoTable {
 public:
  std::optional<Value> find(const std::string& key) const {
    const auto& shard = shard_for(key);
    std::lock_guard lock(shard.mutex);
    auto it = shard.map.find(key);
    if (it == shard.map.end()) return std::nullopt;
    return it->second;
  }

  void insert(const std::string& key, const Value& value) {
    auto& shard = shard_for(key);
    std::lock_guard lock(shard.mutex);
    shard.map.try_emplace(key, value);
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& shard : shards_) {
      std::lock_guard lock(shard.mutex);
      n += shard.map.size();
    }
    return n;
  }

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::string, Value> map;
  };

  Shard& shard_for(const std::string& key) { return shards_[std::hash<std::string>{}(key) % Shards]; }
  const Shard& shard_for(const std::string& key) const {
    return shards_[std::hash<std::string>{}(key) % Shards];
  }

  std::array<Shard, Shards> shards_;
};

}  // namespace wordle
