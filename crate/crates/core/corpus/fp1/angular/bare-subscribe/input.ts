import { Component, OnDestroy, OnInit } from '@angular/core';
import { Store } from './store';

@Component({ selector: 'app-cart', templateUrl: './cart.component.html' })
export class CartComponent implements OnInit, OnDestroy {
  items: string[] = [];

  constructor(private store: Store) {}

  ngOnInit() {
    this.store.items$.subscribe(items => {
      this.items = items;
    });
  }

  ngOnDestroy() {
    console.log('cart gone');
  }
}
