#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>

namespace bosonext {

/**
 * @brief Read-mostly memo table. Values are computed outside the lock; the first insert for a key wins.
 *
 * References returned by find/insert stay valid for the lifetime of the table.
 */
template <class K, class V, class Compare = std::less<K>>
class Memo {
public:
    const V* find(const K& key) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }

    const V& insert(const K& key, V value) {
        std::unique_lock lock(mutex_);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        return map_.emplace(key, std::move(value)).first->second;
    }

    template <class F>
    const V& get_or_compute(const K& key, F&& compute) {
        if (const V* v = find(key)) return *v;
        V value = compute();
        return insert(key, std::move(value));
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

    template <class F>
    void for_each(F&& f) const {
        std::shared_lock lock(mutex_);
        for (const auto& [k, v] : map_) f(k, v);
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<K, V, Compare> map_;
};

}  // namespace bosonext
