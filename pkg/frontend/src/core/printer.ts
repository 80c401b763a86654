// Canonical rendering, kept in lockstep with the reference checker so that
// embedded and service-backed builds return identical payloads.

import { Formula, Term } from "./syntax";

const KEYWORDS = new Set(["forall", "exists"]);
const IDENT = /^[A-Za-z][A-Za-z0-9_]*$/;

const PREC_IMP = 1;
const PREC_DIS = 2;
const PREC_CON = 3;
const PREC_NEG = 4;

function termConstants(f: Formula, acc: Set<string>): void {
  const walkTerm = (t: Term): void => {
    if (t.kind === "app") {
      if (t.args.length === 0) acc.add(t.symbol);
      t.args.forEach(walkTerm);
    }
  };
  switch (f.kind) {
    case "pred":
      f.args.forEach(walkTerm);
      return;
    case "imp":
    case "dis":
    case "con":
      termConstants(f.left, acc);
      termConstants(f.right, acc);
      return;
    case "neg":
      termConstants(f.body, acc);
      return;
    case "uni":
    case "exi":
      termConstants(f.body, acc);
      return;
  }
}

function binderName(preferred: string | undefined, body: Formula, stack: string[]): string {
  const unsafe = new Set<string>(stack);
  for (const k of KEYWORDS) unsafe.add(k);
  termConstants(body, unsafe);
  if (preferred && !unsafe.has(preferred) && IDENT.test(preferred)) return preferred;
  let n = stack.length;
  while (unsafe.has(`x${n}`)) n += 1;
  return `x${n}`;
}

export function printTerm(t: Term, names: string[] = []): string {
  if (t.kind === "bound") {
    return t.index < names.length ? names[t.index] : `?${t.index}`;
  }
  if (t.args.length === 0) return t.symbol;
  return `${t.symbol}(${t.args.map((a) => printTerm(a, names)).join(", ")})`;
}

export function printFormula(f: Formula, tail = true): string {
  const go = (g: Formula, need: number, tailHere: boolean, stack: string[]): string => {
    switch (g.kind) {
      case "pred":
        if (g.args.length === 0) return g.symbol;
        return `${g.symbol}(${g.args.map((a) => printTerm(a, stack)).join(", ")})`;
      case "neg":
        return "~" + go(g.body, PREC_NEG, tailHere, stack);
      case "con": {
        const wrapped = need > PREC_CON;
        const text =
          go(g.left, PREC_CON, false, stack) +
          " & " +
          go(g.right, PREC_CON + 1, tailHere || wrapped, stack);
        return wrapped ? `(${text})` : text;
      }
      case "dis": {
        const wrapped = need > PREC_DIS;
        const text =
          go(g.left, PREC_DIS, false, stack) +
          " | " +
          go(g.right, PREC_DIS + 1, tailHere || wrapped, stack);
        return wrapped ? `(${text})` : text;
      }
      case "imp": {
        const wrapped = need > PREC_IMP;
        const text =
          go(g.left, PREC_IMP + 1, false, stack) +
          " -> " +
          go(g.right, PREC_IMP, tailHere || wrapped, stack);
        return wrapped ? `(${text})` : text;
      }
      case "uni":
      case "exi": {
        const word = g.kind === "uni" ? "forall" : "exists";
        const name = binderName(g.name, g.body, stack);
        const body = go(g.body, 0, true, [name, ...stack]);
        const text = `${word} ${name}. ${body}`;
        return tailHere ? text : `(${text})`;
      }
    }
  };
  return go(f, 0, tail, []);
}

export function printSequent(formulas: Iterable<Formula>): string {
  return Array.from(formulas, (f) => printFormula(f)).join(", ");
}
