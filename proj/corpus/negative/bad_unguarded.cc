Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint f / 1 : forall (n : nat), nat :=
  fun (n : nat) => f n.
