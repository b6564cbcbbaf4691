package main

type Keeper struct{ n int64 }

func (k *Keeper) EndBlock() {
	k.step()
}

func (k *Keeper) step() {
	h := k.helper
	h()
}

func (k *Keeper) helper() {
	k.n++
}
