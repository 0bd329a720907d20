import { Component, OnDestroy, OnInit } from '@angular/core';
import { Store } from './store';
import { Subject, takeUntil } from 'rxjs';

@Component({ selector: 'app-cart', templateUrl: './cart.component.html' })
export class CartComponent implements OnInit, OnDestroy {
  private readonly destroy$ = new Subject<void>();
  items: string[] = [];

  constructor(private store: Store) {}

  ngOnInit() {
    this.store.items$.pipe(takeUntil(this.destroy$)).subscribe(items => {
      this.items = items;
    });
  }

  ngOnDestroy() {
    console.log('cart gone');
    this.destroy$.next();
    this.destroy$.complete();
  }
}
