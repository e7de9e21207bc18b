#!/usr/bin/python3

from typing import List, Optional, Sequence, Union

TreeNode = Union[str, Sequence]


def build_tree(
    tree_structure: Sequence[TreeNode], _indent_data: Optional[List[bool]] = None
) -> str:
    """
    Build a tree graph from a nested list.

    Each item in the list is a top-level node. A node may be:

    * A string, drawn as a leaf.
    * A sequence, where the first value is the label and each subsequent value is
      a child node beneath it.

    Arguments
    ---------
    tree_structure : Sequence
        List or tuple to be turned into a tree.
    _indent_data
        Internal list tracking which ancestors still have siblings below them. The
        initial call should leave this as `None`.

    Returns
    -------
    str
        Tree graph, one node per line.
    """
    if _indent_data is None:
        _indent_data = []

    lines = []
    for i, row in enumerate(tree_structure):
        has_sibling = i < len(tree_structure) - 1

        indent = "".join("│   " if value else "    " for value in _indent_data[1:])
        if _indent_data:
            indent += "├── " if has_sibling else "└── "

        label = row if isinstance(row, str) else str(row[0])
        lines.append(f"{indent}{label}")
        if not isinstance(row, str) and len(row) > 1:
            lines.append(build_tree(row[1:], _indent_data + [has_sibling]).rstrip("\n"))

    return "\n".join(lines) + "\n"
