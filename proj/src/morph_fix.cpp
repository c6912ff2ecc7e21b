#include "morphfit/morph_fix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>
#include <vector>

namespace morphfit {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

long long FrequencyTable::count(const std::string& word) const {
    auto it = counts.find(word);
    return it == counts.end() ? 0 : it->second;
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open frequency file: " + path.string());
    FrequencyTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw Error("frequency line " + std::to_string(line_no) + ": expected word<TAB>count");
        std::string_view rest = std::string_view(line).substr(tab + 1);
        long long count = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), count);
        if (ec != std::errc() || ptr != rest.data() + rest.size() || count < 0)
            throw Error("frequency line " + std::to_string(line_no) + ": bad count");
        table.counts[line.substr(0, tab)] = count;
    }
    return table;
}

VectorStore morph_fix(const VectorStore& store, const PairList& attract, const FrequencyTable& frequencies) {
    DisjointSet components(store.size());
    std::vector<bool> linked(store.size(), false);
    for (const auto& [a, b] : attract) {
        auto ia = store.find(a);
        auto ib = store.find(b);
        if (!ia || !ib || *ia == *ib) continue;
        components.unite(*ia, *ib);
        linked[*ia] = linked[*ib] = true;
    }

    // representative per component root
    std::vector<std::optional<RowIndex>> best(store.size());
    for (RowIndex i = 0; i < store.size(); ++i) {
        if (!linked[i]) continue;
        auto& rep = best[components.find(i)];
        if (!rep) {
            rep = i;
            continue;
        }
        long long ci = frequencies.count(store.word(i));
        long long cr = frequencies.count(store.word(*rep));
        if (ci > cr || (ci == cr && store.word(i) < store.word(*rep))) rep = i;
    }

    VectorStore out = store;
    for (RowIndex i = 0; i < store.size(); ++i) {
        if (!linked[i]) continue;
        RowIndex rep = *best[components.find(i)];
        out.matrix().row(static_cast<Eigen::Index>(i)) = store.initial_matrix().row(static_cast<Eigen::Index>(rep));
    }
    return out;
}

}  // namespace morphfit
