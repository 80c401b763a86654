// First-order terms and formulas with de Bruijn binders. Quantifier display
// names are printing metadata and never take part in equality.

export type Term =
  | { kind: "bound"; index: number }
  | { kind: "app"; symbol: string; args: Term[] };

export type Formula =
  | { kind: "pred"; symbol: string; args: Term[] }
  | { kind: "imp"; left: Formula; right: Formula }
  | { kind: "dis"; left: Formula; right: Formula }
  | { kind: "con"; left: Formula; right: Formula }
  | { kind: "neg"; body: Formula }
  | { kind: "uni"; body: Formula; name?: string }
  | { kind: "exi"; body: Formula; name?: string };

export const bound = (index: number): Term => ({ kind: "bound", index });
export const app = (symbol: string, args: Term[] = []): Term => ({
  kind: "app",
  symbol,
  args,
});
export const pred = (symbol: string, args: Term[] = []): Formula => ({
  kind: "pred",
  symbol,
  args,
});
export const imp = (left: Formula, right: Formula): Formula => ({ kind: "imp", left, right });
export const dis = (left: Formula, right: Formula): Formula => ({ kind: "dis", left, right });
export const con = (left: Formula, right: Formula): Formula => ({ kind: "con", left, right });
export const neg = (body: Formula): Formula => ({ kind: "neg", body });
export const uni = (body: Formula, name?: string): Formula => ({ kind: "uni", body, name });
export const exi = (body: Formula, name?: string): Formula => ({ kind: "exi", body, name });

export class NegativeShiftCapture extends Error {}

export function termEquals(a: Term, b: Term): boolean {
  if (a.kind === "bound") return b.kind === "bound" && a.index === b.index;
  return (
    b.kind === "app" &&
    a.symbol === b.symbol &&
    a.args.length === b.args.length &&
    a.args.every((t, i) => termEquals(t, b.args[i]))
  );
}

export function formulaEquals(a: Formula, b: Formula): boolean {
  if (a.kind !== b.kind) return false;
  switch (a.kind) {
    case "pred": {
      const o = b as Extract<Formula, { kind: "pred" }>;
      return (
        a.symbol === o.symbol &&
        a.args.length === o.args.length &&
        a.args.every((t, i) => termEquals(t, o.args[i]))
      );
    }
    case "imp":
    case "dis":
    case "con": {
      const o = b as Extract<Formula, { kind: "imp" }>;
      return formulaEquals(a.left, o.left) && formulaEquals(a.right, o.right);
    }
    case "neg":
      return formulaEquals(a.body, (b as Extract<Formula, { kind: "neg" }>).body);
    case "uni":
    case "exi":
      // display names do not affect equality
      return formulaEquals(a.body, (b as Extract<Formula, { kind: "uni" }>).body);
  }
}

export function shift(t: Term, amount: number, cutoff = 0): Term {
  if (t.kind === "bound") {
    if (t.index < cutoff) return t;
    const j = t.index + amount;
    if (j < cutoff) {
      throw new NegativeShiftCapture(
        `cannot shift bound variable ${t.index} by ${amount} at cutoff ${cutoff}`,
      );
    }
    return bound(j);
  }
  return app(t.symbol, t.args.map((a) => shift(a, amount, cutoff)));
}

export function instantiate(body: Formula, t: Term): Formula {
  const subTerm = (u: Term, depth: number): Term => {
    if (u.kind === "bound") {
      if (u.index === depth) return shift(t, depth, 0);
      if (u.index > depth) return bound(u.index - 1);
      return u;
    }
    return app(u.symbol, u.args.map((a) => subTerm(a, depth)));
  };
  const sub = (f: Formula, depth: number): Formula => {
    switch (f.kind) {
      case "pred":
        return pred(f.symbol, f.args.map((a) => subTerm(a, depth)));
      case "imp":
        return imp(sub(f.left, depth), sub(f.right, depth));
      case "dis":
        return dis(sub(f.left, depth), sub(f.right, depth));
      case "con":
        return con(sub(f.left, depth), sub(f.right, depth));
      case "neg":
        return neg(sub(f.body, depth));
      case "uni":
        return uni(sub(f.body, depth + 1), f.name);
      case "exi":
        return exi(sub(f.body, depth + 1), f.name);
    }
  };
  return sub(body, 0);
}

export interface SymbolInventory {
  functions: Set<string>; // "name/arity"
  predicates: Set<string>;
  names: Set<string>;
}

export function constantsOf(formulas: Iterable<Formula>): SymbolInventory {
  const functions = new Set<string>();
  const predicates = new Set<string>();
  const names = new Set<string>();
  const walkTerm = (t: Term): void => {
    if (t.kind === "app") {
      functions.add(`${t.symbol}/${t.args.length}`);
      names.add(t.symbol);
      t.args.forEach(walkTerm);
    }
  };
  const walk = (f: Formula): void => {
    switch (f.kind) {
      case "pred":
        predicates.add(`${f.symbol}/${f.args.length}`);
        names.add(f.symbol);
        f.args.forEach(walkTerm);
        return;
      case "imp":
      case "dis":
      case "con":
        walk(f.left);
        walk(f.right);
        return;
      case "neg":
        walk(f.body);
        return;
      case "uni":
      case "exi":
        walk(f.body);
        return;
    }
  };
  for (const f of formulas) walk(f);
  return { functions, predicates, names };
}
