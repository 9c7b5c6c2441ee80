(* Natural numbers and addition by recursion on the second argument. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition one := S O.
Definition two := S (S O).
Definition three := S (S (S O)).
Definition five := S (S three).

Fixpoint plus / 2 : forall (m : nat) (n : nat), nat :=
  fun (m : nat) (n : nat) =>
  match n as y in nat return nat with
  | O => m
  | S p => S (plus m p)
  end.

Check plus : forall (m : nat) (n : nat), nat.
Check plus two three : nat.
Assert plus two three = five : nat.
Assert plus O two = two : nat.
Assert plus three O = three : nat.
Eval plus two three.
Model two : nat depth 5.
Model five : nat depth 8.
