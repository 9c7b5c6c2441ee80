Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint f / 2 : forall (m : nat) (n : nat), nat :=
  fun (m : nat) (n : nat) =>
  match n as y in nat return nat with
  | O => m
  | S p => f p m
  end.
