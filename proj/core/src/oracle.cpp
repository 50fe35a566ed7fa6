#include "hytab/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace hytab {

namespace {

constexpr std::size_t kMaxWorlds = 5;

bool bit(std::uint32_t mask, std::size_t n, std::size_t a, std::size_t b) { return (mask >> (a * n + b)) & 1U; }

bool transitive(std::uint32_t mask, std::size_t n) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (bit(mask, n, a, b))
        for (std::size_t c = 0; c < n; ++c)
          if (bit(mask, n, b, c) && !bit(mask, n, a, c)) return false;
  return true;
}

bool antisymmetric(std::uint32_t mask, std::size_t n) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (bit(mask, n, a, b) && bit(mask, n, b, a)) return false;
  return true;
}

std::uint32_t permute(std::uint32_t mask, std::size_t n, const std::vector<std::size_t>& perm) {
  std::uint32_t out = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (bit(mask, n, a, b)) out |= 1U << (perm[a] * n + perm[b]);
  return out;
}

std::vector<std::uint32_t> enumerate_skeletons(FrameClass c, std::size_t n) {
  if (c == FrameClass::USPO) return {};
  if (c == FrameClass::All && n > 4) {
    throw BudgetError("oracle: unrestricted frames on " + std::to_string(n) + " worlds are too many to enumerate");
  }

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::size_t> free_bits;
  std::uint32_t forced = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b || c == FrameClass::All) {
        free_bits.push_back(a * n + b);
      } else if (c == FrameClass::PO) {
        forced |= 1U << (a * n + b);
      }
    }
  }

  std::vector<std::uint32_t> out;
  const std::uint64_t combos = std::uint64_t{1} << free_bits.size();
  for (std::uint64_t k = 0; k < combos; ++k) {
    std::uint32_t mask = forced;
    for (std::size_t b = 0; b < free_bits.size(); ++b) {
      if ((k >> b) & 1U) mask |= 1U << free_bits[b];
    }
    if (c != FrameClass::All) {
      if (!transitive(mask, n)) continue;
      if (c == FrameClass::PO && !antisymmetric(mask, n)) continue;
    }
    bool canonical = true;
    for (const auto& p : perms) {
      if (permute(mask, n, p) < mask) {
        canonical = false;
        break;
      }
    }
    if (canonical) out.push_back(mask);
  }
  return out;
}

// Post-order compilation of f over world bitmasks.
struct Program {
  struct Op {
    Kind kind;
    std::size_t atom = 0;  // prop or nominal index
    std::size_t a = 0, b = 0;
  };
  std::vector<Op> ops;
  std::vector<std::string> props;
  std::vector<Nominal> noms;
};

std::size_t compile(const Formula& f, Program& prog) {
  Program::Op op{f.kind()};
  auto index_of = [](std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    return static_cast<std::size_t>(it - names.begin());
  };
  switch (f.kind()) {
    case Kind::Prop:
      op.atom = index_of(prog.props, f.name());
      break;
    case Kind::Nom:
      op.atom = index_of(prog.noms, f.name());
      break;
    case Kind::And:
    case Kind::Or:
      op.a = compile(f.lhs(), prog);
      op.b = compile(f.rhs(), prog);
      break;
    case Kind::At:
      op.atom = index_of(prog.noms, f.name());
      op.a = compile(f.child(), prog);
      break;
    default:
      op.a = compile(f.child(), prog);
  }
  prog.ops.push_back(op);
  return prog.ops.size() - 1;
}

std::uint32_t run(const Program& prog, std::size_t n, const std::uint32_t* succ, const std::uint32_t* prop_mask,
                  const std::size_t* nom_world, std::vector<std::uint32_t>& val) {
  const std::uint32_t full = (1U << n) - 1;
  for (std::size_t k = 0; k < prog.ops.size(); ++k) {
    const auto& op = prog.ops[k];
    std::uint32_t r = 0;
    switch (op.kind) {
      case Kind::Prop:
        r = prop_mask[op.atom];
        break;
      case Kind::Nom:
        r = 1U << nom_world[op.atom];
        break;
      case Kind::Neg:
        r = ~val[op.a] & full;
        break;
      case Kind::And:
        r = val[op.a] & val[op.b];
        break;
      case Kind::Or:
        r = val[op.a] | val[op.b];
        break;
      case Kind::Dia:
        for (std::size_t w = 0; w < n; ++w)
          if (succ[w] & val[op.a]) r |= 1U << w;
        break;
      case Kind::Box:
        for (std::size_t w = 0; w < n; ++w)
          if ((succ[w] & ~val[op.a]) == 0) r |= 1U << w;
        break;
      case Kind::At:
        r = (val[op.a] >> nom_world[op.atom]) & 1U ? full : 0;
        break;
    }
    val[k] = r;
  }
  return val.back();
}

Countermodel build(const Program& prog, std::size_t n, std::uint32_t skeleton, const std::vector<std::uint32_t>& prop_mask,
                   const std::vector<std::size_t>& nom_world, std::uint32_t truth) {
  Countermodel out;
  for (std::size_t w = 0; w < n; ++w) out.model.add_world("w" + std::to_string(w));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (bit(skeleton, n, a, b)) out.model.add_edge(a, b);
  for (std::size_t k = 0; k < prog.props.size(); ++k) {
    out.model.declare_prop(prog.props[k]);
    for (std::size_t w = 0; w < n; ++w)
      if ((prop_mask[k] >> w) & 1U) out.model.set_prop(prog.props[k], w);
  }
  for (std::size_t k = 0; k < prog.noms.size(); ++k) out.model.set_nominal(prog.noms[k], nom_world[k]);
  out.world = static_cast<WorldId>(__builtin_ctz(truth));
  return out;
}

}  // namespace

const std::vector<std::uint32_t>& frame_skeletons(FrameClass c, std::size_t n) {
  if (n == 0 || n > kMaxWorlds) throw std::invalid_argument("frame size must be between 1 and 5");
  static std::mutex mutex;
  static std::map<std::pair<FrameClass, std::size_t>, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(c, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_skeletons(c, n)).first;
  return it->second;
}

std::optional<Countermodel> oracle_model(const Formula& f, FrameClass c, const OracleLimits& limits) {
  if (limits.max_worlds < 1 || limits.max_worlds > kMaxWorlds) {
    throw std::invalid_argument("oracle max_worlds must be between 1 and 5");
  }
  Program prog;
  const auto props = props_of(f);
  const auto noms = nominals_of(f);
  prog.props.assign(props.begin(), props.end());
  prog.noms.assign(noms.begin(), noms.end());
  compile(f, prog);

  std::vector<std::uint32_t> val(prog.ops.size());
  std::uint64_t examined = 0;
  for (std::size_t n = 1; n <= limits.max_worlds; ++n) {
    const auto& skeletons = frame_skeletons(c, n);
    std::uint64_t nom_combos = 1;
    for (std::size_t k = 0; k < prog.noms.size(); ++k) nom_combos *= n;
    const std::uint64_t prop_combos = std::uint64_t{1} << (n * prog.props.size());

    std::vector<std::uint32_t> succ(n);
    std::vector<std::size_t> nom_world(prog.noms.size());
    std::vector<std::uint32_t> prop_mask(prog.props.size());
    for (std::uint32_t skeleton : skeletons) {
      for (std::size_t w = 0; w < n; ++w) succ[w] = (skeleton >> (w * n)) & ((1U << n) - 1);
      for (std::uint64_t nc = 0; nc < nom_combos; ++nc) {
        std::uint64_t rest = nc;
        for (auto& w : nom_world) {
          w = rest % n;
          rest /= n;
        }
        for (std::uint64_t pc = 0; pc < prop_combos; ++pc) {
          for (std::size_t k = 0; k < prop_mask.size(); ++k) prop_mask[k] = (pc >> (k * n)) & ((1U << n) - 1);
          if (++examined > limits.max_models) throw BudgetError("oracle model budget exceeded");
          const std::uint32_t truth = run(prog, n, succ.data(), prop_mask.data(), nom_world.data(), val);
          if (truth != 0) return build(prog, n, skeleton, prop_mask, nom_world, truth);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Countermodel> oracle_countermodel(const Formula& f, FrameClass c, const OracleLimits& limits) {
  return oracle_model(Formula::neg(f), c, limits);
}

std::optional<Countermodel> oracle_countermodel(const Formula& f, FrameClass c, std::size_t max_worlds) {
  return oracle_countermodel(f, c, OracleLimits{max_worlds});
}

}  // namespace hytab
