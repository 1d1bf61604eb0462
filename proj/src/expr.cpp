#include "pslet/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

namespace pslet {

NodePtr Node::constant(double v)
{
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->value = v;
  return n;
}

NodePtr Node::variable()
{
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->depends_on_rho = true;
  return n;
}

NodePtr Node::parameter(std::string name)
{
  auto n = std::make_shared<Node>();
  n->op = Op::Parameter;
  n->name = std::move(name);
  return n;
}

NodePtr Node::unary(Op op, NodePtr operand)
{
  auto n = std::make_shared<Node>();
  n->op = op;
  n->depends_on_rho = operand->depends_on_rho;
  n->lhs = std::move(operand);
  return n;
}

NodePtr Node::binary(Op op, NodePtr lhs, NodePtr rhs)
{
  auto n = std::make_shared<Node>();
  n->op = op;
  n->depends_on_rho = lhs->depends_on_rho || rhs->depends_on_rho;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool structurally_equal(const Node& a, const Node& b)
{
  if (a.op != b.op)
    return false;
  switch (a.op) {
    case Op::Constant:
      return a.value == b.value;
    case Op::Variable:
      return true;
    case Op::Parameter:
      return a.name == b.name;
    case Op::Neg:
      return structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

namespace {

class ConstantPotentialError : public SolverError
{
public:
  ConstantPotentialError()
    : SolverError(Kind::NoStableFrame,
                  "no stable frame: potential does not depend on rho (V' = 0 everywhere)")
  {
  }
};

void collect_params(const Node& node, std::vector<std::string>& out)
{
  if (node.op == Op::Parameter) {
    if (std::find(out.begin(), out.end(), node.name) == out.end())
      out.push_back(node.name);
    return;
  }
  if (node.lhs)
    collect_params(*node.lhs, out);
  if (node.rhs)
    collect_params(*node.rhs, out);
}

bool is_ident_start(char c)
{
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser
{
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse()
  {
    skip_ws();
    if (pos_ == text_.size())
      throw ParseError("empty input", pos_);
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return root;
  }

private:
  void skip_ws()
  {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c)
  {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr()
  {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Node::binary(Op::Add, lhs, term());
      else if (accept('-'))
        lhs = Node::binary(Op::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term()
  {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Node::binary(Op::Mul, lhs, unary());
      else if (accept('/'))
        lhs = Node::binary(Op::Div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary()
  {
    if (accept('-'))
      return Node::unary(Op::Neg, unary());
    return power();
  }

  NodePtr power()
  {
    NodePtr base = atom();
    if (accept('^'))
      return Node::binary(Op::Pow, base, unary());
    return base;
  }

  NodePtr atom()
  {
    skip_ws();
    if (pos_ == text_.size())
      throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')'))
        throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])))
      return number();
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "rho")
        return Node::variable();
      return Node::parameter(std::move(name));
    }
    if (c == ')' || c == '+' || c == '*' || c == '/' || c == '^')
      throw ParseError(std::string("unexpected '") + c + "'", pos_);
    throw ParseError("unknown character", pos_);
  }

  NodePtr number()
  {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_]))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_]))
        ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-'))
        ++p;
      if (p < text_.size() && is_digit(text_[p])) {
        pos_ = p;
        while (pos_ < text_.size() && is_digit(text_[pos_]))
          ++pos_;
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw ParseError("malformed number", start);
    return Node::constant(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(const Node& n)
{
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool parens, std::string& out)
{
  if (parens)
    out += '(';
  print(n, out);
  if (parens)
    out += ')';
}

void print(const Node& n, std::string& out)
{
  switch (n.op) {
    case Op::Constant: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, ptr);
      return;
    }
    case Op::Variable:
      out += "rho";
      return;
    case Op::Parameter:
      out += n.name;
      return;
    case Op::Neg:
      out += '-';
      print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case Op::Pow:
      print_wrapped(*n.lhs, precedence(*n.lhs) <= 4, out);
      out += '^';
      print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const int p = precedence(n);
      print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
      switch (n.op) {
        case Op::Add: out += " + "; break;
        case Op::Sub: out += " - "; break;
        case Op::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

} // namespace

PotentialSpec::PotentialSpec(NodePtr root) : root_(std::move(root))
{
  if (!root_->depends_on_rho)
    throw ConstantPotentialError();
  collect_params(*root_, params_);
}

bool PotentialSpec::has_param(std::string_view name) const
{
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

PotentialSpec parse_potential(std::string_view text)
{
  return PotentialSpec(Parser(text).parse());
}

std::string to_string(const Node& node)
{
  std::string out;
  print(node, out);
  return out;
}

std::string to_string(const PotentialSpec& spec) { return to_string(spec.root()); }

BoundPotential::BoundPotential(PotentialSpec spec, ParamMap values)
  : spec_(std::move(spec)), values_(std::move(values))
{
}

double BoundPotential::param(const std::string& name) const
{
  auto it = values_.find(name);
  if (it == values_.end())
    throw BindError("unbound parameter `" + name + "`");
  return it->second;
}

BoundPotential bind_params(const PotentialSpec& spec,
                           const ParamMap& values,
                           bool strict,
                           std::vector<std::string>* warnings)
{
  ParamMap bound;
  for (const auto& name : spec.params()) {
    auto it = values.find(name);
    if (it == values.end())
      throw BindError("missing parameter `" + name + "`");
    if (!std::isfinite(it->second))
      throw BindError("parameter `" + name + "` is not finite");
    bound.emplace(name, it->second);
  }
  for (const auto& [name, value] : values) {
    if (spec.has_param(name))
      continue;
    const std::string msg = "extraneous parameter `" + name + "`";
    if (strict)
      throw BindError(msg);
    if (warnings)
      warnings->push_back(msg);
  }
  return BoundPotential(spec, std::move(bound));
}

namespace detail {

std::optional<long> integral_exponent(double e)
{
  if (!std::isfinite(e) || std::fabs(e) > 1e6 || std::floor(e) != e)
    return std::nullopt;
  return static_cast<long>(e);
}

} // namespace detail

} // namespace pslet
