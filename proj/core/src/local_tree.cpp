#include "dynconn/local_tree.hpp"

#include <algorithm>
#include <tuple>

namespace dynconn {

using Node = LocalTreeArena::Node;
using Kind = LocalTreeArena::Kind;

Node* LocalTreeArena::make(Kind kind) {
  Node* x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
  } else {
    pool_.emplace_back();
    x = &pool_.back();
  }
  *x = Node{};
  x->kind = kind;
  x->id = next_id_++;
  ++live_;
  return x;
}

Node* LocalTreeArena::make_leaf(VertexId v) {
  Node* x = make(Kind::Leaf);
  x->vertex = v;
  x->nl = 1;
  return x;
}

void LocalTreeArena::release(Node* x) {
  *x = Node{};
  free_.push_back(x);
  --live_;
}

void LocalTreeArena::pull(Node* x) {
  x->nl = 0;
  x->tree_bitmap = 0;
  x->nontree_bitmap = 0;
  for (const Node* c : {x->left, x->right}) {
    if (!c) continue;
    x->nl += c->nl;
    x->tree_bitmap |= c->tree_bitmap;
    x->nontree_bitmap |= c->nontree_bitmap;
  }
}

Node* LocalTreeArena::pair(Node* x, Node* y) {
  if (rank(x) != rank(y)) throw Error(ErrorCode::RankMismatch, "pair of unequal ranks");
  if (y->nl < x->nl) std::swap(x, y);
  Node* par = make(Kind::Rank);
  par->left = x;
  par->right = y;
  x->parent = par;
  y->parent = par;
  pull(par);
  return par;
}

void LocalTreeArena::construct(Node* root, const std::vector<Node*>& s) {
  for (std::size_t k = 1; k < s.size(); ++k)
    if (rank(s[k - 1]) >= rank(s[k])) throw Error(ErrorCode::UnsortedInput, "rank roots not strictly increasing");
  root->left = root->right = nullptr;
  const std::size_t x = s.size();
  if (x == 1) {
    root->left = s[0];
    s[0]->parent = root;
  } else if (x >= 2) {
    Node* cur = x == 2 ? root : make(Kind::Connecting);
    cur->left = s[0];
    cur->right = s[1];
    s[0]->parent = cur;
    s[1]->parent = cur;
    if (cur != root) pull(cur);
    for (std::size_t i = 2; i < x; ++i) {
      Node* ne = i == x - 1 ? root : make(Kind::Connecting);
      ne->left = cur;
      ne->right = s[i];
      cur->parent = ne;
      s[i]->parent = ne;
      if (ne != root) pull(ne);
      cur = ne;
    }
  }
  pull(root);
}

std::vector<Node*> LocalTreeArena::chain_of(const Node* root) const {
  std::vector<Node*> chain;
  for (Node* c = root->left; c && c->kind == Kind::Connecting; c = c->left) chain.push_back(c);
  return chain;
}

std::vector<Node*> LocalTreeArena::rank_roots(const Node* root) const {
  std::vector<Node*> out;
  if (!root->left) return out;
  if (!root->right) {
    out.push_back(root->left);
    return out;
  }
  out.push_back(root->right);
  const Node* cur = root;
  while (cur->left->kind == Kind::Connecting) {
    cur = cur->left;
    out.push_back(cur->right);
  }
  out.push_back(cur->left);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Node*> LocalTreeArena::members(const Node* root) const {
  std::vector<Node*> out;
  std::vector<Node*> stack;
  for (Node* c : {root->right, root->left})
    if (c) stack.push_back(c);
  while (!stack.empty()) {
    Node* x = stack.back();
    stack.pop_back();
    if (!is_internal(x)) {
      out.push_back(x);
      continue;
    }
    for (Node* c : {x->right, x->left})
      if (c) stack.push_back(c);
  }
  return out;
}

Node* LocalTreeArena::local_root_of(Node* x) {
  Node* r = x->parent;
  while (r && is_internal(r)) r = r->parent;
  return r;
}

void LocalTreeArena::carry(std::vector<Node*>& s) {
  auto less = [](const Node* a, const Node* b) {
    return std::make_tuple(rank(a), a->nl, a->id) < std::make_tuple(rank(b), b->nl, b->id);
  };
  std::sort(s.begin(), s.end(), less);
  for (;;) {
    std::size_t k = 0;
    while (k + 1 < s.size() && rank(s[k]) != rank(s[k + 1])) ++k;
    if (k + 1 >= s.size()) return;
    Node* par = pair(s[k], s[k + 1]);
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(k), s.begin() + static_cast<std::ptrdiff_t>(k) + 2);
    s.insert(std::upper_bound(s.begin(), s.end(), par, less), par);
  }
}

void LocalTreeArena::insert_member(Node* root, Node* x) {
  std::vector<Node*> s = rank_roots(root);
  for (Node* c : chain_of(root)) release(c);
  x->parent = nullptr;
  s.push_back(x);
  carry(s);
  construct(root, s);
}

void LocalTreeArena::remove_member(Node* root, Node* x) {
  if (local_root_of(x) != root) throw Error(ErrorCode::NotAChild, "node is not a member of this local tree");
  std::vector<Node*> s = rank_roots(root);
  for (Node* c : chain_of(root)) release(c);
  Node* rt = x;
  while (rt->parent->kind == Kind::Rank) rt = rt->parent;
  s.erase(std::find(s.begin(), s.end(), rt));
  // Siblings along x's rank-tree path become rank roots.
  Node* cur = x;
  while (cur != rt) {
    Node* p = cur->parent;
    Node* sib = p->left == cur ? p->right : p->left;
    sib->parent = nullptr;
    s.push_back(sib);
    cur = p;
  }
  // Release the path's rank nodes, bottom-up.
  for (Node* p = x->parent; p && p->kind == Kind::Rank;) {
    Node* up = p == rt ? nullptr : p->parent;
    release(p);
    p = up;
  }
  x->parent = nullptr;
  carry(s);
  construct(root, s);
}

std::vector<Node*> LocalTreeArena::release_local(Node* root) {
  std::vector<Node*> out;
  std::vector<Node*> stack;
  for (Node* c : {root->right, root->left})
    if (c) stack.push_back(c);
  while (!stack.empty()) {
    Node* x = stack.back();
    stack.pop_back();
    if (!is_internal(x)) {
      x->parent = nullptr;
      out.push_back(x);
      continue;
    }
    for (Node* c : {x->right, x->left})
      if (c) stack.push_back(c);
    release(x);
  }
  root->left = root->right = nullptr;
  pull(root);
  return out;
}

Node* LocalTreeArena::bitmap_search(Node* root, int bit, bool nontree) {
  auto has = [&](const Node* x) {
    return x && (((nontree ? x->nontree_bitmap : x->tree_bitmap) >> bit) & 1U);
  };
  if (!has(root)) throw Error(ErrorCode::BitUnset, "bit " + std::to_string(bit) + " clear at root");
  Node* x = root;
  while (x->kind != Kind::Leaf) x = has(x->left) ? x->left : x->right;
  return x;
}

void LocalTreeArena::collect_leaves(Node* root, int bit, bool nontree, std::vector<Node*>& out) {
  if (!root || !(((nontree ? root->nontree_bitmap : root->tree_bitmap) >> bit) & 1U)) return;
  if (root->kind == Kind::Leaf) {
    out.push_back(root);
    return;
  }
  collect_leaves(root->left, bit, nontree, out);
  collect_leaves(root->right, bit, nontree, out);
}

}  // namespace dynconn
