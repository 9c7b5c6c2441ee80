(* A two-element type; functions over it land in finite function spaces. *)

Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Definition flip := fun (b : bitt) =>
  match b as y in bitt return bitt with
  | b0 => b1
  | b1 => b0
  end.

Definition bid := fun (b : bitt) => b.
Definition bb := forall (b : bitt), bitt.

Check flip : bb.
Check bid : bb.
Assert flip b0 = b1 : bitt.
Assert flip (flip b1) = b1 : bitt.
Eval flip (flip b0).
Model b1 : bitt depth 3.
Model flip : bb depth 3.
Model bid : bb depth 3.
