package app

// App wires modules together.
type App struct {
	name string
}

// PrepareProposal is an ABCI 2.0 method; only an entry when configured.
func (a *App) PrepareProposal(height int64) []byte {
	return prefix(a.name, height)
}

// Commit flushes state; excluded from entry points by default.
func (a *App) Commit() []byte {
	return []byte(a.name)
}

func prefix(name string, height int64) []byte {
	return []byte(name)
}
