Inductive nat : Type0 := O : nat | S : nat -> nat.
Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Definition bad := fun (n : nat) =>
  match n as y in bitt return bitt with
  | b0 => b0
  | b1 => b1
  end.
