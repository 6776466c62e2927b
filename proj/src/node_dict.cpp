#include "csax/node_dict.hpp"

#include <algorithm>

namespace csax {

NodeDicts NodeDicts::prepare(const SuffixTreeTopo& topo, u32 d) {
    if (d < 2) throw std::invalid_argument("heaviness threshold must be at least 2");
    NodeDicts nd;
    nd.d_ = d;
    size_t nn = topo.num_nodes();
    std::vector<bool> marked(nn, false);
    std::vector<u64> slots;  // heavy-child count per marked node, preorder order
    for (size_t p = 0; p < nn; ++p) {
        auto v = topo.node_at_preorder(p);
        if (topo.is_leaf(v)) {
            nd.heavy_idx_.push_back(kNoHeavyChild);
            continue;
        }
        size_t heavy = 0, light = 0;
        u32 heavy_ord = 0;
        size_t nc = topo.child_count(v);
        for (size_t j = 0; j < nc; ++j) {
            if (topo.num_leaves(topo.child(v, j)) >= d) {
                if (heavy == 0) heavy_ord = static_cast<u32>(j);
                ++heavy;
            } else {
                ++light;
            }
        }
        bool special = heavy >= 2;
        if (special || (heavy == 1 && light >= d)) {
            marked[p] = true;
            slots.push_back(heavy);
        } else {
            nd.heavy_idx_.push_back(heavy == 1 ? static_cast<u8>(heavy_ord) : kNoHeavyChild);
        }
    }
    nd.D_ = BitVec::from_bools(marked);
    nd.dict_start_.assign(slots.size() + 1, 0);
    for (size_t k = 0; k < slots.size(); ++k) nd.dict_start_[k + 1] = nd.dict_start_[k] + slots[k];
    size_t total = nd.dict_start_.back();
    nd.keys_.assign(total, 0);
    nd.child_.assign(total, 0);
    nd.lo_chunk_.assign(total, 0);
    nd.lo_rem_.assign(total, 0);
    nd.hi_chunk_.assign(total, 0);
    nd.hi_rem_.assign(total, 0);
    nd.filled_.assign(slots.size(), 0);
    return nd;
}

size_t NodeDicts::dict_index(size_t preorder) const {
    if (!D_.get(preorder)) throw std::logic_error("node carries no dictionary");
    return D_.rank1(static_cast<i64>(preorder)) - 1;
}

std::optional<NodeDicts::LookupResult> NodeDicts::lookup(const SequenceIndex& seq,
                                                         size_t preorder, Symbol a,
                                                         QueryStats* qs) const {
    size_t k = dict_index(preorder);
    if (qs) ++qs->dict_lookups;
    auto first = keys_.begin() + dict_start_[k];
    auto last = keys_.begin() + dict_start_[k + 1];
    auto it = std::lower_bound(first, last, static_cast<u16>(a));
    if (it == last || *it != a) return std::nullopt;
    size_t e = static_cast<size_t>(it - keys_.begin());
    LookupResult res;
    res.child = child_[e];
    res.rank_lo = seq.decode_rank(a, lo_chunk_[e], lo_rem_[e]);
    res.rank_hi = seq.decode_rank(a, hi_chunk_[e], hi_rem_[e]);
    return res;
}

std::optional<u32> NodeDicts::heavy_child_of(size_t preorder) const {
    if (D_.get(preorder)) throw std::logic_error("marked node queried for heavy-child ordinal");
    u8 v = heavy_idx_[D_.rank0(static_cast<i64>(preorder)) - 1];
    if (v == kNoHeavyChild) return std::nullopt;
    return static_cast<u32>(v);
}

size_t NodeDicts::slot_count(size_t preorder) const {
    size_t k = dict_index(preorder);
    return dict_start_[k + 1] - dict_start_[k];
}

void NodeDicts::fill_dict(size_t preorder, const std::vector<Entry>& entries) {
    size_t k = dict_index(preorder);
    if (filled_[k]) throw std::logic_error("dictionary filled twice");
    if (entries.size() != dict_start_[k + 1] - dict_start_[k])
        throw std::logic_error("dictionary entry count mismatch");
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i && entries[i - 1].key >= entries[i].key)
            throw std::logic_error("dictionary keys not strictly increasing");
        size_t e = dict_start_[k] + i;
        keys_[e] = static_cast<u16>(entries[i].key);
        child_[e] = static_cast<u16>(entries[i].child);
        lo_chunk_[e] = entries[i].lo_chunk;
        lo_rem_[e] = static_cast<u16>(entries[i].lo_rem);
        hi_chunk_[e] = entries[i].hi_chunk;
        hi_rem_[e] = static_cast<u16>(entries[i].hi_rem);
    }
    filled_[k] = 1;
}

bool NodeDicts::fully_populated() const {
    return std::all_of(filled_.begin(), filled_.end(), [](u8 f) { return f != 0; });
}

u64 NodeDicts::storage_bits() const {
    u64 bits = D_.size();
    bits += dict_start_.size() * 64;
    bits += keys_.size() * (16 + 16 + 32 + 16 + 32 + 16);
    bits += heavy_idx_.size() * 8;
    return bits;
}

void NodeDicts::save(Writer& w) const {
    w.put_u32(d_);
    w.put_u64(D_.size());
    w.put_vec(D_.words());
    w.put_vec(dict_start_);
    w.put_vec(keys_);
    w.put_vec(child_);
    w.put_vec(lo_chunk_);
    w.put_vec(lo_rem_);
    w.put_vec(hi_chunk_);
    w.put_vec(hi_rem_);
    w.put_vec(heavy_idx_);
}

NodeDicts NodeDicts::load(Reader& r) {
    NodeDicts nd;
    nd.d_ = r.get_u32();
    u64 nb = r.get_u64();
    nd.D_ = BitVec::from_words(nb, r.get_vec<u64>());
    nd.dict_start_ = r.get_vec<u64>();
    nd.keys_ = r.get_vec<u16>();
    nd.child_ = r.get_vec<u16>();
    nd.lo_chunk_ = r.get_vec<u32>();
    nd.lo_rem_ = r.get_vec<u16>();
    nd.hi_chunk_ = r.get_vec<u32>();
    nd.hi_rem_ = r.get_vec<u16>();
    nd.heavy_idx_ = r.get_vec<u8>();
    size_t total = nd.keys_.size();
    if (nd.d_ < 2 || nd.dict_start_.size() != nd.D_.ones() + 1 || nd.dict_start_.front() != 0 ||
        nd.dict_start_.back() != total || !std::is_sorted(nd.dict_start_.begin(), nd.dict_start_.end()) ||
        nd.child_.size() != total || nd.lo_chunk_.size() != total || nd.lo_rem_.size() != total ||
        nd.hi_chunk_.size() != total || nd.hi_rem_.size() != total ||
        nd.heavy_idx_.size() != nd.D_.zeros())
        throw CorruptIndex("bad node dictionaries");
    nd.filled_.assign(nd.D_.ones(), 1);
    return nd;
}

}  // namespace csax
