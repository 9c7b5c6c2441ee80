Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint f / 1 : forall (n : nat), nat :=
  fun (n : nat) =>
  match n as y in nat return nat with
  | O => O
  | S p => f (S p)
  end.
