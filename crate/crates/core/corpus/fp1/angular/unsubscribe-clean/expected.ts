import { Component, OnDestroy, OnInit } from '@angular/core';
import { Subscription } from 'rxjs';
import { Prices } from './prices';

@Component({ selector: 'app-price', template: '{{ p }}' })
export class PriceComponent implements OnInit, OnDestroy {
  p = 0;
  private sub?: Subscription;

  constructor(private prices: Prices) {}

  ngOnInit() {
    this.sub = this.prices.latest$.subscribe(p => (this.p = p));
  }

  ngOnDestroy() {
    this.sub?.unsubscribe();
  }
}
