// Parity fixture scripts: every checker and parser code path that the
// CheckResponse schema can surface, exercised in both modes.

export const FIXTURE_SCRIPTS: Record<string, string> = {
  complete: "p -> p\n\nAlphaImp\n  ~p\n  p\nExt\n  p\n  ~p\nBasic\n",
  incomplete_prefix: "p -> p\n\nAlphaImp\n  ~p\n  p\n",
  goal_only: "p | ~p\n",
  beta_branches: "p & q\n\nBetaCon\n  p\n+\n  q\n",
  beta_wrong_order: "p & q\n\nBetaCon\n  q\n+\n  p\n",
  result_mismatch: "p -> p\n\nAlphaImp\n  p\n  p\n",
  basic_no_match: "~p | p\n\nAlphaDis\n  ~p\n  p\nBasic\n",
  basic_ordering_ok: "p | ~p\n\nAlphaDis\n  p\n  ~p\nBasic\n",
  not_applicable: "p & q\n\nAlphaDis\n  p\n  q\n",
  negneg: "~~p -> p\n\nAlphaImp\n  ~~~p\n  p\n",
  gamma_ok:
    "(exists x. p(x)) -> (exists y. p(y))\n\nAlphaImp\n  ~exists x. p(x)\n  exists y. p(y)\n",
  gamma_inconsistent:
    "exists x. r(x, x)\n\nGammaExi\n  r(a, b)\n",
  gamma_captured:
    "exists x. forall y. r(y, x)\n\nGammaExi\n  forall y. r(y, y)\n",
  delta_ok:
    "(forall x. p(x)) -> p(c)\n\nAlphaImp\n  ~forall x. p(x)\n  p(c)\nExt\n  p(c)\n  ~forall x. p(x)\n",
  delta_freshness:
    "(forall x. p(x)) -> p(c)\n\nAlphaImp\n  ~forall x. p(x)\n  p(c)\nExt\n  forall x. p(x)\n",
  delta_stale_constant:
    "forall x. p(x) | ~p(c)\n\nDeltaUni\n  p(c) | ~p(c)\n",
  delta_compound:
    "forall x. p(x)\n\nDeltaUni\n  p(f(c))\n",
  ext_not_subset: "p | q\n\nAlphaDis\n  p\n  q\nExt\n  p\n  s\n",
  ext_weaken_dup: "p | q\n\nAlphaDis\n  p\n  q\nExt\n  q\n  q\n",
  steps_after_completion:
    "p -> p\n\nAlphaImp\n  ~p\n  p\nExt\n  p\n  ~p\nBasic\nBasic\n",
  unknown_rule: "p -> p\n\nAlphImp\n  ~p\n  p\nExt\n  p\n  ~p\nBasic\n",
  unknown_rule_no_suggestion: "p -> p\n\nzzzzzzzz\n",
  missing_result: "p -> p\n\nAlphaImp\nBasic\n",
  missing_branch: "p & q\n\nBetaCon\n  p\n  q\n",
  under_indented: "p -> p\n\nAlphaImp\n ~p\n",
  stray_plus: "p -> p\n\n+\nAlphaImp\n  ~p\n  p\n",
  mid_sequent_abandon: "p -> p\n\nAlphaImp\n  ~p &\n",
  arity_mismatch: "p(c) -> p(c)\n\nAlphaImp\n  ~p(c)\n  p(c, c)\n",
  syntax_error_goal: "p -> (\n",
  empty_input: "",
  blank_input: "\n\n\n",
  goal_missing_blank: "# only a comment\n",
  unicode_script: "∀x. p(x) → p(x)\n\nAlphaImp\n  ¬∀ x. p(x)\n  forall x. p(x)\n",
  bad_character: "p $ q\n",
  multi_line_goal: "p ->\np\n\nAlphaImp\n  ~p\n  p\n",
  comments_everywhere: "p -> p # goal\n\n# step one\nAlphaImp\n  ~p # left\n  p\n",
  crlf: "p -> p\r\n\r\nAlphaImp\r\n  ~p\r\n  p\r\n",
  bom: "﻿p -> p\n",
  quantifier_display_names:
    "(exists turtle. forall bird. r(turtle, bird)) -> (forall bird. exists turtle. r(turtle, bird))\n",
  nested_quantifiers:
    "forall x. forall y. r(x, y)\n\nDeltaUni\n  forall y. r(c0, y)\nDeltaUni\n  r(c0, c1)\n",
  iff_desugar: "p <-> ~~p\n",
  shadowed_binders: "forall x. exists x. p(x)\n",
  deep_nesting: "((p -> q) -> ((q -> s) -> (p -> s)))\n\nAlphaImp\n  ~(p -> q)\n  (q -> s) -> p -> s\n",
};

export function oversizedScript(): string {
  return "p\n" + "#".repeat(300 * 1024);
}
