#pragma once

#include "semind/heuristics.hpp"

namespace semind {

// The shipped heuristic set. `--heuristics PATH` swaps in a different file
// with the same surface syntax; see docs/dsl.md.
inline const char* default_heuristics_text() {
  return R"(
; Auxiliary assertions, evaluated against a function's defining clauses via
; exists-def. Parameters are their only scope.

; The function pattern-matches (destructs) its n-th argument in some clause.
(assertion matches_on_nth (n f)
  (exists fo (occurrences-of f)
    (and (is_left_hand_side fo)
      (exists arg (occurrences)
        (and (is_nth_argument_of arg n fo)
             (not (is_variable arg)))))))

; The n-th argument is an accumulator: bound to a plain variable on the left,
; rebuilt to something else in a recursive call on the right.
(assertion changes_nth_accumulating (n f)
  (exists fo (occurrences-of f)
    (exists lhs_arg (occurrences)
      (and (is_left_hand_side fo)
           (is_nth_argument_of lhs_arg n fo)
           (is_variable lhs_arg)
           (exists fo2 (occurrences-of f)
             (exists rhs_arg (occurrences)
               (and (is_right_hand_side fo2)
                    (is_nth_argument_of rhs_arg n fo2)
                    (not (are_of_same_term rhs_arg lhs_arg)))))))))

; The n-th argument differs between the clause head and a recursive call.
(assertion generalise_nth_argument_of (n f)
  (exists lhs_occ (occurrences)
    (and (is_left_hand_side lhs_occ)
      (exists nth_param_on_lhs (occurrences)
        (and (is_nth_argument_of nth_param_on_lhs n lhs_occ)
          (exists f_occ_on_rhs (occurrences-of f)
            (and (is_right_hand_side f_occ_on_rhs)
              (exists nth_param_on_rhs (occurrences)
                (and (is_nth_argument_of nth_param_on_rhs n f_occ_on_rhs)
                     (not (are_of_same_term nth_param_on_rhs nth_param_on_lhs)))))))))))

; One clause pattern-matches both the n-th and the m-th argument.
(assertion matches_both (n m f)
  (exists fo (occurrences-of f)
    (and (is_left_hand_side fo)
         (exists a (occurrences)
           (and (is_nth_argument_of a n fo) (not (is_variable a))))
         (exists b (occurrences)
           (and (is_nth_argument_of b m fo) (not (is_variable b)))))))

; Some clause matches two constructor layers deep on the n-th argument.
(assertion matches_two_deep (n f)
  (exists fo (occurrences-of f)
    (and (is_left_hand_side fo)
      (exists a (occurrences)
        (and (is_nth_argument_of a n fo)
             (not (is_variable a))
             (exists b (occurrences)
               (and (is_or_below_nth_argument_of b n fo)
                    (not (are_of_same_term b a))
                    (not (is_variable b))
                    (not (is_constant b)))))))))

(section generic)

; ---- induction phase -------------------------------------------------------

(heuristic all_terms_are_variables induction 2
  (forall t (in-terms induction_terms) (is_variable t)))

(heuristic all_terms_occur_in_goal induction 2
  (forall t (in-terms induction_terms)
    (exists o (occurrences-of t) true)))

(heuristic every_term_at_destructed_position induction 10
  (forall t (in-terms induction_terms)
    (exists f (terms)
      (and (is_defined_function f)
        (exists n (numbers)
          (and (exists fo (occurrences-of f)
                 (exists o (occurrences-of t)
                   (is_nth_argument_of o n fo)))
               (exists-def f matches_on_nth (n f))))))))

(heuristic some_term_at_destructed_position induction 4
  (exists t (in-terms induction_terms)
    (exists f (terms)
      (and (is_defined_function f)
        (exists n (numbers)
          (and (exists fo (occurrences-of f)
                 (exists o (occurrences-of t)
                   (is_nth_argument_of o n fo)))
               (exists-def f matches_on_nth (n f))))))))

(heuristic first_term_at_destructed_position induction 5
  (exists t (in-terms induction_terms)
    (and (is_nth_induction_term t 1)
      (exists f (terms)
        (and (is_defined_function f)
          (exists n (numbers)
            (and (exists fo (occurrences-of f)
                   (exists o (occurrences-of t)
                     (is_nth_argument_of o n fo)))
                 (exists-def f matches_on_nth (n f)))))))))

; Stronger form: no occurrence of any chosen term sits outside a destructed
; argument position (bare right-hand sides disqualify).
(heuristic all_occurrences_at_destructed_positions induction 2
  (forall t (in-terms induction_terms)
    (forall o (occurrences-of t)
      (exists f (terms)
        (and (is_defined_function f)
          (exists n (numbers)
            (and (exists fo (occurrences-of f)
                   (is_nth_argument_of o n fo))
                 (exists-def f matches_on_nth (n f)))))))))

(heuristic terms_share_an_application induction 3
  (exists f (terms)
    (and (is_defined_function f)
      (exists fo (occurrences-of f)
        (forall t (in-terms induction_terms)
          (exists o (occurrences-of t)
            (exists n (numbers)
              (is_nth_argument_of o n fo))))))))

; Inducting on several distinct terms at once needs to earn its keep.
(heuristic multiple_terms_penalty induction -4
  (exists t (in-terms induction_terms)
    (not (is_nth_induction_term t 1))))

(heuristic rule_fits_matching_occurrence induction 2
  (exists f (terms)
    (and (rule_is_computation_of f)
      (exists fo (occurrences-of f)
        (forall t (in-terms induction_terms)
          (exists n (numbers)
            (and (is_nth_induction_term t n)
                 (exists o (occurrences-of t)
                   (is_nth_argument_of o n fo)))))))))

; An accumulating rule rewrites a position plain structural induction would
; hold fixed; reward taking it at the accumulated position.
(heuristic nonstructural_rule_bonus induction 14
  (exists f (terms)
    (and (rule_is_computation_of f)
      (exists n (numbers)
        (and (exists-def f changes_nth_accumulating (n f))
             (exists t (in-terms induction_terms)
               (is_nth_induction_term t n)))))))

(heuristic simultaneous_recursion_rule_bonus induction 10
  (exists f (terms)
    (and (rule_is_computation_of f)
      (exists n (numbers)
        (exists m (numbers)
          (and (are_different_numbers n m)
               (exists-def f matches_both (n m f))))))))

; A fitting computation rule whose recursion is plain structural adds nothing
; over the bare tactic; prefer the shorter spelling.
(heuristic redundant_computation_rule_penalty induction -6
  (and (exists f (terms)
         (and (rule_is_computation_of f)
           (exists fo (occurrences-of f)
             (forall t (in-terms induction_terms)
               (exists n (numbers)
                 (and (is_nth_induction_term t n)
                      (exists o (occurrences-of t)
                        (is_nth_argument_of o n fo))))))))
       (not (exists f (terms)
              (and (rule_is_computation_of f)
                (exists n (numbers)
                  (exists-def f changes_nth_accumulating (n f))))))
       (not (exists f (terms)
              (and (rule_is_computation_of f)
                (exists n (numbers)
                  (exists m (numbers)
                    (and (are_different_numbers n m)
                         (exists-def f matches_both (n m f))))))))))

(heuristic foreign_rule_penalty induction -12
  (and (rule_is_computation)
       (not (exists f (terms)
              (and (rule_is_computation_of f)
                (exists fo (occurrences-of f)
                  (forall t (in-terms induction_terms)
                    (exists n (numbers)
                      (and (is_nth_induction_term t n)
                           (exists o (occurrences-of t)
                             (is_nth_argument_of o n fo)))))))))))

(heuristic custom_rule_cost induction -3
  (and (uses_rule) (not (rule_is_computation))))

(heuristic compound_term_penalty induction -30
  (exists t (in-terms induction_terms)
    (and (not (is_variable t)) (not (is_constant t)))))

(heuristic constant_term_penalty induction -10
  (exists t (in-terms induction_terms) (is_constant t)))

(heuristic missing_term_penalty induction -3
  (exists f (terms)
    (and (is_defined_function f)
      (exists fo (occurrences-of f)
        (exists n (numbers)
          (exists o (occurrences)
            (and (is_nth_argument_of o n fo)
                 (is_variable o)
                 (not (is_induction_term o))
                 (not (is_in_arbitrary o))
                 (exists-def f matches_on_nth (n f)))))))))

; ---- generalisation phase --------------------------------------------------

; Fix variables whose corresponding argument changes between a definition's
; head and its recursive calls.
(heuristic nipkow_generalisation generalisation 2
  (forall arb_term (in-terms arbitrary_terms)
    (exists f_term (terms)
      (exists f_occ (occurrences-of f_term)
        (exists arb_occ (occurrences-of arb_term)
          (exists generalise_nth (numbers)
            (and (is_or_below_nth_argument_of arb_occ generalise_nth f_occ)
                 (exists-def f_term generalise_nth_argument_of (generalise_nth f_term)))))))))

; The sharpened form: the variable sits exactly at an accumulator position of
; an application that also carries an induction term.
(heuristic accumulator_generalisation generalisation 11
  (forall arb (in-terms arbitrary_terms)
    (exists f (terms)
      (exists fo (occurrences-of f)
        (and (exists t (in-terms induction_terms)
               (exists to (occurrences-of t)
                 (exists m (numbers)
                   (is_nth_argument_of to m fo))))
             (exists ao (occurrences-of arb)
               (exists n (numbers)
                 (and (is_nth_argument_of ao n fo)
                      (exists-def f changes_nth_accumulating (n f))))))))))

; Dual penalty: a variable that changes in recursive calls was left fixed.
(heuristic missed_generalisation_penalty generalisation -8
  (exists v (terms)
    (and (is_variable v)
         (not (is_induction_term v))
         (not (is_in_arbitrary v))
         (exists f (terms)
           (exists fo (occurrences-of f)
             (exists vo (occurrences-of v)
               (exists n (numbers)
                 (and (is_nth_argument_of vo n fo)
                      (exists-def f changes_nth_accumulating (n f))))))))))

(heuristic static_arbitrary_penalty generalisation -4
  (exists arb (in-terms arbitrary_terms)
    (not (exists f (terms)
           (exists fo (occurrences-of f)
             (exists ao (occurrences-of arb)
               (exists n (numbers)
                 (and (is_nth_argument_of ao n fo)
                      (exists-def f changes_nth_accumulating (n f))))))))))

(heuristic generalised_variable_used_in_application generalisation 1
  (forall arb (in-terms arbitrary_terms)
    (exists f (terms)
      (and (is_defined_function f)
        (exists fo (occurrences-of f)
          (exists ao (occurrences-of arb)
            (exists n (numbers)
              (is_or_below_nth_argument_of ao n fo))))))))

(section prelude)

; Snoc-shaped goals go through more smoothly with the snoc induction rule.
(heuristic rev_snoc_rule_bonus induction 6
  (and (rule_named "rev_induct")
    (exists f (terms)
      (and (is_constant_named f "append")
        (exists fo (occurrences-of f)
          (exists snoc (occurrences)
            (and (is_nth_argument_of snoc 2 fo)
                 (exists h (terms)
                   (and (is_constant_named h "Cons") (head_of h snoc)))
                 (exists z (terms)
                   (and (is_constant_named z "Nil") (occurs_in z snoc))))))))))

; Functions that match two constructors deep want the two-step rule.
(heuristic nat_two_step_rule_bonus induction 4
  (and (rule_named "twostep")
    (exists f (terms)
      (and (is_defined_function f)
        (exists n (numbers)
          (exists-def f matches_two_deep (n f)))))))

(heuristic append_head_argument_bonus induction 1
  (exists f (terms)
    (and (is_constant_named f "append")
      (exists fo (occurrences-of f)
        (exists t (in-terms induction_terms)
          (and (is_nth_induction_term t 1)
            (exists o (occurrences-of t)
              (is_nth_argument_of o 1 fo))))))))
)";
}

inline const HeuristicSet& default_heuristics() {
  static const HeuristicSet set = load_heuristics(default_heuristics_text());
  return set;
}

}  // namespace semind
