#pragma once

#include <map>
#include <utility>
#include <vector>

#include "detset/elem_set.hpp"
#include "detset/ring.hpp"

namespace detset {

// Iterated sumset/product set that remembers, for every element, one
// back-pointer chain to the base elements that produced it (first found in
// ascending iteration order). decode() replays the chain and checks that it
// reproduces the element before returning it.
template <class R>
class TraceSet {
public:
  using Elem = typename R::Elem;
  enum class Op { Sum, Product };

  static TraceSet iterated(Op op, std::size_t fold, const ElemSet<R>& base) {
    if (fold == 0) raise(Errc::usage, "traced iteration needs fold >= 1");
    TraceSet t(base.ring(), op, fold);
    t.layers_.resize(fold);
    base.for_each([&](const Elem& e) {
      t.base_.push_back(e);
      t.layers_[0].emplace(e, Link{e, e});
    });
    for (std::size_t k = 1; k < fold; ++k) {
      for (const auto& [prev, link] : t.layers_[k - 1]) {
        (void)link;
        for (const Elem& b : t.base_) {
          Elem v = t.apply(prev, b);
          t.layers_[k].emplace(v, Link{prev, b});  // keeps the first witness
        }
      }
    }
    t.set_ = ElemSet<R>(base.ring());
    for (const auto& [e, link] : t.layers_.back()) {
      (void)link;
      t.set_.insert(e);
    }
    return t;
  }

  const ElemSet<R>& as_set() const { return set_; }
  std::size_t fold() const { return fold_; }

  bool contains(const Elem& e) const { return layers_.back().count(e) > 0; }

  // the fold-length tuple of base elements combining to e
  std::vector<Elem> decode(const Elem& e) const {
    if (!contains(e)) raise(Errc::not_a_member, "element has no trace");
    std::vector<Elem> out;
    out.reserve(fold_);
    Elem cur = e;
    for (std::size_t k = fold_; k-- > 1;) {
      const Link& link = layers_[k].at(cur);
      out.push_back(link.base);
      cur = link.prev;
    }
    out.push_back(cur);
    std::reverse(out.begin(), out.end());
    Elem replay = out[0];
    for (std::size_t i = 1; i < out.size(); ++i)
      replay = apply(replay, out[i]);
    if (!ring_.eq(replay, e))
      raise(Errc::degenerate, "trace replay mismatch");
    return out;
  }

private:
  struct Link {
    Elem prev;
    Elem base;
  };

  TraceSet(R ring, Op op, std::size_t fold)
      : ring_(std::move(ring)), op_(op), fold_(fold), set_(ring_) {}

  Elem apply(const Elem& a, const Elem& b) const {
    return op_ == Op::Sum ? ring_.add(a, b) : ring_.mul(a, b);
  }

  R ring_;
  Op op_;
  std::size_t fold_;
  std::vector<Elem> base_;
  std::vector<std::map<Elem, Link>> layers_;
  ElemSet<R> set_;
};

template <class R>
TraceSet<R> traced_iter_sumset(std::size_t m, const ElemSet<R>& a) {
  return TraceSet<R>::iterated(TraceSet<R>::Op::Sum, m, a);
}

template <class R>
TraceSet<R> traced_iter_productset(std::size_t m, const ElemSet<R>& a) {
  return TraceSet<R>::iterated(TraceSet<R>::Op::Product, m, a);
}

}  // namespace detset
