#pragma once

#include <vector>

#include "csax/common.hpp"
#include "csax/fm_index.hpp"
#include "csax/node_dict.hpp"
#include "csax/text.hpp"
#include "csax/topology.hpp"

namespace csax {

struct BuildInstrumentation {
    size_t max_stack_depth = 0;  // live traversal levels, current frame included
    u64 v_marks = 0;             // tri-state marks set while collecting link symbols
    u64 visited_nodes = 0;
    std::vector<u32> visited_preorders;  // only recorded on request
};

struct BuildResult {
    FMIndex fm;
    SuffixTreeTopo topo;  // suffix tree of T
    NodeDicts nd;
    u32 d = 2;
    BuildInstrumentation instr;
};

// Full index construction: suffix arrays, BWTs, and topologies of both the
// text and its reverse, then a depth-first walk over the tree of Weiner
// links between internal nodes, filling every marked node's dictionary.
// The reverse-side topology and the forward-side sequence are intermediate
// and dropped on return. sample_rate 0 selects the default.
BuildResult build_self_index_parts(const Text& t, u32 sample_rate = 0,
                                   bool record_visits = false);

u32 default_sample_rate(size_t n);

}  // namespace csax
