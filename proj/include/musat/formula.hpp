#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "musat/errors.hpp"

namespace musat {

enum class LogicId { K, KD, Graded, Amc };

const char* logic_name(LogicId id);
std::optional<LogicId> logic_from_name(const std::string& name);

// literals and modal operators share one payload type so a label can treat
// both as atomic blocks; Atom and NegAtom carry no argument
enum class ModKind : uint8_t { Atom, NegAtom, Dia, Box, GDia, GBox, CDia, CBox };

using AgentSet = uint64_t;

struct ModalOp {
    ModKind kind = ModKind::Atom;
    uint32_t grade = 0;   // GDia, GBox: "more than grade" resp. "all but at most grade"
    AgentSet agents = 0;  // CDia, CBox: bit i-1 stands for agent i
    std::string atom;     // Atom, NegAtom

    bool nullary() const { return kind == ModKind::Atom || kind == ModKind::NegAtom; }
    bool diamond_like() const {
        return kind == ModKind::Dia || kind == ModKind::GDia || kind == ModKind::CDia;
    }
    ModalOp dual() const;
    std::string str() const; // operator part only, no argument
    bool operator==(const ModalOp& other) const;
};

enum class NodeKind : uint8_t { Bot, Top, And, Or, Modal, Var, Mu, Nu };

struct FNode;
using FRef = std::shared_ptr<const FNode>;

struct FNode {
    NodeKind kind = NodeKind::Bot;
    ModalOp op;      // Modal only
    std::string var; // Var, Mu, Nu
    FRef a, b;       // And/Or use both, Modal/Mu/Nu use a
    uint64_t hash = 0;
};

class Formula {
  public:
    Formula() = default;
    explicit Formula(FRef node) : node_(std::move(node)) {}

    static Formula bot();
    static Formula top();
    static Formula atom(const std::string& name);
    static Formula natom(const std::string& name);
    static Formula var(const std::string& name);
    static Formula band(Formula l, Formula r);
    static Formula bor(Formula l, Formula r);
    static Formula modal(ModalOp op);              // literal payload
    static Formula modal(ModalOp op, Formula arg); // proper modality
    static Formula mu(const std::string& name, Formula body);
    static Formula nu(const std::string& name, Formula body);

    static Formula dia(Formula arg);
    static Formula box(Formula arg);
    static Formula gdia(uint32_t grade, Formula arg);
    static Formula gbox(uint32_t grade, Formula arg);
    static Formula cdia(AgentSet agents, Formula arg);
    static Formula cbox(AgentSet agents, Formula arg);

    // right folds; empty lists give the neutral element
    static Formula conj(const std::vector<Formula>& parts);
    static Formula disj(const std::vector<Formula>& parts);

    bool valid() const { return node_ != nullptr; }
    NodeKind kind() const { return node_->kind; }
    const ModalOp& op() const { return node_->op; }
    const std::string& varname() const { return node_->var; }
    Formula left() const { return Formula(node_->a); }
    Formula right() const { return Formula(node_->b); }
    Formula child() const { return Formula(node_->a); } // Modal, Mu, Nu
    uint64_t hash() const { return node_->hash; }
    const FNode* raw() const { return node_.get(); }

    std::string str() const;

  private:
    FRef node_;
};

bool same(const Formula& x, const Formula& y);

// negation normal form complement; bound variables stay as they are, the
// binders above them flip
Formula negate(const Formula& f);

// replaces free occurrences of var, stops at binders reusing the name
Formula substitute(const Formula& f, const std::string& var, const Formula& repl);

std::set<std::string> free_vars(const Formula& f);
std::vector<std::string> collect_atoms(const Formula& f);
int max_agent(const Formula& f);
size_t formula_size(const Formula& f);

struct BinderInfo {
    std::string name;
    bool isMu = false;
    int level = 0;
    int priority = 0;
};

struct FormulaAnalysis {
    std::vector<BinderInfo> binders;
    int alternationDepth = 0;
    bool aconjunctive = true;

    int priority_of(const std::string& binder) const;
};

// requires a clean closed formula; run normalize on anything parsed
FormulaAnalysis analyze(const Formula& f);
int alternation_depth(const Formula& f);
bool is_aconjunctive(const Formula& f);

// renames binders until each name is unique and distinct from every atom
// name, then replaces unguarded occurrences of bound variables with the
// binder's trivial value (false under mu, true under nu)
Formula normalize(const Formula& f);

Formula parse(const std::string& text, LogicId logic);

} // namespace musat
