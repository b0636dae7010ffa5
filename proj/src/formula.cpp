#include "heyting/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace heyting {

FormulaRef make_node(Kind k, int v, FormulaRef a, FormulaRef b) {
  return FormulaRef(new Formula(k, v, std::move(a), std::move(b)));
}

FormulaRef Formula::bot() {
  static const FormulaRef f = make_node(Kind::Bot, -1, nullptr, nullptr);
  return f;
}

FormulaRef Formula::top() {
  static const FormulaRef f = make_node(Kind::Top, -1, nullptr, nullptr);
  return f;
}

FormulaRef Formula::variable(int index) {
  if (index < 0) throw ArityError("negative variable index");
  return make_node(Kind::Var, index, nullptr, nullptr);
}

FormulaRef Formula::conj(FormulaRef a, FormulaRef b) {
  return make_node(Kind::And, -1, std::move(a), std::move(b));
}

FormulaRef Formula::disj(FormulaRef a, FormulaRef b) {
  return make_node(Kind::Or, -1, std::move(a), std::move(b));
}

FormulaRef Formula::imp(FormulaRef a, FormulaRef b) {
  return make_node(Kind::Imp, -1, std::move(a), std::move(b));
}

int Formula::degree() const {
  if (degree_cache_ >= 0) return degree_cache_;
  int d = 0;
  switch (kind) {
    case Kind::Var:
    case Kind::Bot:
    case Kind::Top:
      d = 0;
      break;
    case Kind::And:
    case Kind::Or:
      d = std::max(lhs->degree(), rhs->degree());
      break;
    case Kind::Imp:
      d = std::max(lhs->degree(), rhs->degree()) + 1;
      break;
  }
  degree_cache_ = d;
  return d;
}

int Formula::size() const {
  if (size_cache_ >= 0) return size_cache_;
  int s = 1;
  if (lhs) s += lhs->size() + rhs->size();
  size_cache_ = s;
  return s;
}

int Formula::max_var() const {
  switch (kind) {
    case Kind::Var:
      return var;
    case Kind::Bot:
    case Kind::Top:
      return -1;
    default:
      return std::max(lhs->max_var(), rhs->max_var());
  }
}

bool Formula::structurally_equal(const Formula& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Var:
      return var == other.var;
    case Kind::Bot:
    case Kind::Top:
      return true;
    default:
      return lhs->structurally_equal(*other.lhs) &&
             rhs->structurally_equal(*other.rhs);
  }
}

namespace {

struct Parser {
  const std::string& text;
  Arity arity;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_arrow() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  FormulaRef formula() { return implication(); }

  FormulaRef implication() {
    FormulaRef left = disjunction();
    if (eat_arrow()) return Formula::imp(left, implication());
    return left;
  }

  FormulaRef disjunction() {
    FormulaRef f = conjunction();
    while (eat('|')) f = Formula::disj(f, conjunction());
    return f;
  }

  FormulaRef conjunction() {
    FormulaRef f = atom();
    while (eat('&')) f = Formula::conj(f, atom());
    return f;
  }

  FormulaRef atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '0') {
      ++pos;
      return Formula::bot();
    }
    if (c == '1') {
      ++pos;
      return Formula::top();
    }
    if (c == '~') {
      ++pos;
      return Formula::neg(atom());
    }
    if (c == '(') {
      ++pos;
      FormulaRef f = formula();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (c == 'p' || c == 'q') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  FormulaRef identifier() {
    char family = text[pos++];
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (family == 'q' && start == pos) {
      // bare "q" allowed when there is exactly one q-variable
      if (arity.m != 1) fail("bare 'q' requires exactly one q-variable");
      return Formula::variable(arity.l);
    }
    if (start == pos) fail("expected variable number");
    int n = std::stoi(text.substr(start, pos - start));
    if (n < 1) fail("variable numbers start at 1");
    if (family == 'p') {
      if (n > arity.l) fail("p-variable index out of arity");
      return Formula::variable(n - 1);
    }
    if (n > arity.m) fail("q-variable index out of arity");
    return Formula::variable(arity.l + n - 1);
  }
};

int precedence(Kind k) {
  switch (k) {
    case Kind::Imp:
      return 1;
    case Kind::Or:
      return 2;
    case Kind::And:
      return 3;
    default:
      return 4;
  }
}

void print_rec(const Formula& f, Arity arity, int parent_prec, bool right_of_imp,
               std::string& out) {
  int prec = precedence(f.kind);
  bool parens = prec < parent_prec || (prec == parent_prec && f.kind == Kind::Imp && !right_of_imp);
  switch (f.kind) {
    case Kind::Bot:
      out += '0';
      return;
    case Kind::Top:
      out += '1';
      return;
    case Kind::Var: {
      if (f.var < arity.l) {
        out += 'p';
        out += std::to_string(f.var + 1);
      } else if (arity.m == 1 && f.var == arity.l) {
        out += 'q';
      } else {
        out += 'q';
        out += std::to_string(f.var - arity.l + 1);
      }
      return;
    }
    case Kind::And:
    case Kind::Or: {
      if (parens) out += '(';
      print_rec(*f.lhs, arity, prec, false, out);
      out += f.kind == Kind::And ? " & " : " | ";
      print_rec(*f.rhs, arity, prec, false, out);
      if (parens) out += ')';
      return;
    }
    case Kind::Imp: {
      if (parens) out += '(';
      print_rec(*f.lhs, arity, prec + 1, false, out);
      out += " -> ";
      print_rec(*f.rhs, arity, prec, true, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

FormulaRef parse(const std::string& text, Arity arity) {
  Parser p{text, arity};
  FormulaRef f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

std::string print(const Formula& f, Arity arity) {
  std::string out;
  print_rec(f, arity, 0, true, out);
  return out;
}

std::string print(const FormulaRef& f, Arity arity) { return print(*f, arity); }

FormulaRef substitute(const FormulaRef& f, const std::map<int, FormulaRef>& subst) {
  switch (f->kind) {
    case Kind::Bot:
    case Kind::Top:
      return f;
    case Kind::Var: {
      auto it = subst.find(f->var);
      if (it == subst.end())
        throw ArityError("substitution missing a binding for an occurring variable");
      return it->second;
    }
    case Kind::And:
      return Formula::conj(substitute(f->lhs, subst), substitute(f->rhs, subst));
    case Kind::Or:
      return Formula::disj(substitute(f->lhs, subst), substitute(f->rhs, subst));
    case Kind::Imp:
      return Formula::imp(substitute(f->lhs, subst), substitute(f->rhs, subst));
  }
  throw DomainError("unreachable");
}

namespace {

void flatten(const FormulaRef& f, Kind k, std::vector<FormulaRef>& out) {
  if (f->kind == k) {
    flatten(f->lhs, k, out);
    flatten(f->rhs, k, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

FormulaRef normalize(const FormulaRef& f) {
  switch (f->kind) {
    case Kind::Bot:
    case Kind::Top:
    case Kind::Var:
      return f;
    case Kind::Imp:
      return Formula::imp(normalize(f->lhs), normalize(f->rhs));
    case Kind::And:
    case Kind::Or: {
      const bool conj = f->kind == Kind::And;
      std::vector<FormulaRef> parts;
      flatten(f, f->kind, parts);
      std::vector<std::pair<std::string, FormulaRef>> keyed;
      for (auto& p : parts) {
        FormulaRef n = normalize(p);
        if (conj && n->kind == Kind::Bot) return Formula::bot();
        if (!conj && n->kind == Kind::Top) return Formula::top();
        if (conj && n->kind == Kind::Top) continue;  // neutral
        if (!conj && n->kind == Kind::Bot) continue;
        keyed.emplace_back(print(n), n);
      }
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      keyed.erase(std::unique(keyed.begin(), keyed.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  keyed.end());
      if (keyed.empty()) return conj ? Formula::top() : Formula::bot();
      FormulaRef acc = keyed.back().second;
      for (auto it = keyed.rbegin() + 1; it != keyed.rend(); ++it)
        acc = conj ? Formula::conj(it->second, acc) : Formula::disj(it->second, acc);
      return acc;
    }
  }
  throw DomainError("unreachable");
}

std::vector<FormulaRef> enumerate_syntactic(Arity arity, int d, int size_cap) {
  if (size_cap < 1) throw DomainError("size_cap must be >= 1");
  // by_size[s] = normalized representatives whose ORIGINAL tree had s nodes
  std::vector<std::vector<FormulaRef>> by_size(size_cap + 1);
  std::set<std::string> seen;
  std::vector<FormulaRef> result;

  auto emit = [&](const FormulaRef& raw) {
    FormulaRef n = normalize(raw);
    if (n->degree() > d) return;
    std::string key = print(n);
    if (seen.insert(key).second) {
      result.push_back(n);
      by_size[std::min(n->size(), size_cap)].push_back(n);
    }
  };

  emit(Formula::bot());
  emit(Formula::top());
  for (int v = 0; v < arity.total(); ++v) emit(Formula::variable(v));

  // Passes to a fixpoint: normalization can shrink a candidate into a size
  // slot that an earlier pass already combined.
  std::size_t before;
  do {
    before = result.size();
    for (int s = 3; s <= size_cap; ++s) {
      for (int sl = 1; sl <= s - 2; ++sl) {
        int sr = s - 1 - sl;
        std::size_t na = by_size[sl].size(), nb = by_size[sr].size();
        for (std::size_t i = 0; i < na; ++i)
          for (std::size_t j = 0; j < nb; ++j) {
            FormulaRef a = by_size[sl][i], b = by_size[sr][j];
            emit(Formula::conj(a, b));
            emit(Formula::disj(a, b));
            if (std::max(a->degree(), b->degree()) + 1 <= d) emit(Formula::imp(a, b));
          }
      }
    }
  } while (result.size() != before);
  return result;
}

}  // namespace heyting
