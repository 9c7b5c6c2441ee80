(* Parameterised inductive whose recursive argument lives at a different,
   but finite, parameter instantiation. *)

Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Inductive titif (x : bitt) : Type0 :=
  W1 : titif x
| W2 : titif b0 -> titif x -> titif x.

Definition w1 := W1 b0.
Definition w2 := W2 b1 (W1 b0) (W1 b1).

Check w1 : titif b0.
Check w2 : titif b1.
Eval w2.

Definition titifb1 := titif b1.
Model w2 : titifb1 depth 4.
