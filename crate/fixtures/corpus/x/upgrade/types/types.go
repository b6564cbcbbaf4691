// Package types defines scheduled-upgrade plans.
package types

// Plan names a software upgrade and the height it activates at.
type Plan struct {
	Name   string
	Height int64
}
