#include "incplan/point_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace incplan {

namespace {

constexpr std::size_t kPendingLimit = 256;

struct Candidate {
    double d2 = 0.0;
    PointIndex::Entry entry;
};

// Total order on candidates: distance first, id as the tie break.
bool closer(const Candidate &a, const Candidate &b) {
    if (a.d2 != b.d2) {
        return a.d2 < b.d2;
    }
    return a.entry.id < b.entry.id;
}

// Bounded best-k collector implemented as a max-heap under `closer`.
class BestK {
  public:
    explicit BestK(std::size_t k) : k_(k) {}

    bool full() const { return heap_.size() == k_; }
    const Candidate &worst() const { return heap_.front(); }

    // True when a candidate at squared distance d2 could still be accepted.
    bool admits(double d2) const { return !full() || d2 <= worst().d2; }

    void offer(const Candidate &c) {
        if (!full()) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end(), closer);
        } else if (closer(c, worst())) {
            std::pop_heap(heap_.begin(), heap_.end(), closer);
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end(), closer);
        }
    }

    std::vector<PointIndex::Entry> sorted_entries() {
        std::sort(heap_.begin(), heap_.end(), closer);
        std::vector<PointIndex::Entry> out;
        out.reserve(heap_.size());
        for (const Candidate &c : heap_) {
            out.push_back(c.entry);
        }
        return out;
    }

  private:
    std::size_t k_;
    std::vector<Candidate> heap_;
};

bool id_kept(std::uint32_t id, const std::vector<std::uint8_t> *keep) {
    return keep == nullptr || (id < keep->size() && (*keep)[id] != 0);
}

} // namespace

void PointIndex::insert(Point2 position, std::uint32_t id) {
    if (!ids_.insert(id).second) {
        throw std::invalid_argument("PointIndex: duplicate id");
    }
    pending_.push_back(Entry{position, id});
    if (pending_.size() >= kPendingLimit) {
        rebuild();
    }
}

void PointIndex::rebuild() {
    std::vector<Entry> entries;
    entries.reserve(size());
    for (const Node &node : tree_) {
        entries.push_back(node.entry);
    }
    entries.insert(entries.end(), pending_.begin(), pending_.end());
    pending_.clear();
    tree_.clear();
    tree_.reserve(entries.size());
    root_ = entries.empty() ? -1 : build_subtree(entries, 0, entries.size(), 0);
}

int PointIndex::build_subtree(std::vector<Entry> &entries, std::size_t lo, std::size_t hi,
                              int depth) {
    if (lo >= hi) {
        return -1;
    }
    const std::uint8_t axis = static_cast<std::uint8_t>(depth % 2);
    const std::size_t mid = lo + (hi - lo) / 2;
    // Ids complete the key so the median is deterministic under equal
    // coordinates.
    std::nth_element(entries.begin() + lo, entries.begin() + mid, entries.begin() + hi,
                     [axis](const Entry &a, const Entry &b) {
                         const double ca = axis == 0 ? a.position.x : a.position.y;
                         const double cb = axis == 0 ? b.position.x : b.position.y;
                         if (ca != cb) {
                             return ca < cb;
                         }
                         return a.id < b.id;
                     });
    const int node_index = static_cast<int>(tree_.size());
    tree_.push_back(Node{entries[mid], -1, -1, axis});
    const int left = build_subtree(entries, lo, mid, depth + 1);
    const int right = build_subtree(entries, mid + 1, hi, depth + 1);
    tree_[node_index].left = left;
    tree_[node_index].right = right;
    return node_index;
}

std::optional<PointIndex::Entry> PointIndex::nearest(Point2 q) const {
    auto best = k_nearest(q, 1);
    if (best.empty()) {
        return std::nullopt;
    }
    return best.front();
}

std::vector<PointIndex::Entry> PointIndex::k_nearest(Point2 q, std::size_t k,
                                                     const std::vector<std::uint8_t> *keep) const {
    if (k == 0 || empty()) {
        return {};
    }
    BestK best(k);
    // Depth-first kd-tree descent, nearer child first; a subtree is skipped
    // only when its splitting plane is strictly farther than the current
    // k-th best, so equal-distance candidates are still visited.
    std::vector<int> stack;
    if (root_ >= 0) {
        stack.push_back(root_);
    }
    while (!stack.empty()) {
        const int index = stack.back();
        stack.pop_back();
        if (index < 0) {
            continue;
        }
        const Node &node = tree_[static_cast<std::size_t>(index)];
        const double d2 = squared_distance(q, node.entry.position);
        if (id_kept(node.entry.id, keep) && best.admits(d2)) {
            best.offer(Candidate{d2, node.entry});
        }
        const double qc = node.axis == 0 ? q.x : q.y;
        const double nc = node.axis == 0 ? node.entry.position.x : node.entry.position.y;
        const double plane = qc - nc;
        const int near_child = plane <= 0.0 ? node.left : node.right;
        const int far_child = plane <= 0.0 ? node.right : node.left;
        // Push far side first so the near side is explored first.
        if (far_child >= 0 && best.admits(plane * plane)) {
            stack.push_back(far_child);
        }
        if (near_child >= 0) {
            stack.push_back(near_child);
        }
    }
    for (const Entry &entry : pending_) {
        if (!id_kept(entry.id, keep)) {
            continue;
        }
        const double d2 = squared_distance(q, entry.position);
        if (best.admits(d2)) {
            best.offer(Candidate{d2, entry});
        }
    }
    return best.sorted_entries();
}

std::vector<PointIndex::Entry> PointIndex::within_radius(Point2 q, double radius) const {
    std::vector<Candidate> found;
    const double r2 = radius * radius;
    std::vector<int> stack;
    if (root_ >= 0) {
        stack.push_back(root_);
    }
    while (!stack.empty()) {
        const int index = stack.back();
        stack.pop_back();
        const Node &node = tree_[static_cast<std::size_t>(index)];
        const double d2 = squared_distance(q, node.entry.position);
        if (d2 <= r2) {
            found.push_back(Candidate{d2, node.entry});
        }
        const double qc = node.axis == 0 ? q.x : q.y;
        const double nc = node.axis == 0 ? node.entry.position.x : node.entry.position.y;
        const double plane = qc - nc;
        const int near_child = plane <= 0.0 ? node.left : node.right;
        const int far_child = plane <= 0.0 ? node.right : node.left;
        if (near_child >= 0) {
            stack.push_back(near_child);
        }
        if (far_child >= 0 && plane * plane <= r2) {
            stack.push_back(far_child);
        }
    }
    for (const Entry &entry : pending_) {
        const double d2 = squared_distance(q, entry.position);
        if (d2 <= r2) {
            found.push_back(Candidate{d2, entry});
        }
    }
    std::sort(found.begin(), found.end(), closer);
    std::vector<Entry> out;
    out.reserve(found.size());
    for (const Candidate &c : found) {
        out.push_back(c.entry);
    }
    return out;
}

} // namespace incplan
