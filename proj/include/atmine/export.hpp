#pragma once

#include <string>
#include <string_view>

#include "atmine/attack_tree.hpp"
#include "atmine/process_tree.hpp"

namespace atmine {

/// RisQFLan-style attack diagram (format version 1, see docs/formats.md).
///
///   // atmine-risqflan 1
///   // model <goal_name>
///   begin attack nodes
///     <ident> [// silent | // label "<text>" | // rep]
///   end attack nodes
///   begin attack diagram
///     <parent> -AND-> [c1, c2]     (also -OR->, -OAND-> for SAND,
///                                   -[1,N]-> for XOR, -REP-> for repetition)
///   end attack diagram
///   begin attack goal
///     <root ident>
///   end attack goal
///
/// Identifiers are the node labels with characters outside [A-Za-z0-9_]
/// replaced, made unique with a numeric suffix in preorder.
std::string to_risqflan(const AttackTree& tree, std::string_view goal_name = "goal");

/// Reconstructs the tree from to_risqflan output. Throws ParseError for
/// unreadable lines and InputError when the diagram is not a single rooted
/// tree over declared nodes.
AttackTree from_risqflan(std::string_view text);

/// Graphviz rendering; node ids follow preorder, children keep their order.
std::string to_dot(const AttackTree& tree);
std::string to_dot(const ProcessTree& tree);

}  // namespace atmine
